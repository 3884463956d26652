// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "starbif/sweep.hpp"

using namespace starbif;

namespace {

Grid interval_grid(int n) {
  return build_grid(make_domain({DomainKind::Interval, -1.0, 1.0, 0.0}), n);
}

Grid disk_grid(int n, int nu_max) {
  return build_grid(make_domain({DomainKind::Disk, 0.0, 0.0, 1.0}), n, nu_max);
}

}  // namespace

TEST_CASE("interval pencil eigenvalues: (k pi/2)^2 - c^2 at r = 1") {
  Grid g = interval_grid(2000);
  OperatorTriple ops = assemble_stiffness(g);
  PotentialDiag W = assemble_potential(g, PotentialField::constant(-100.0), 1.0);
  auto pairs = lowest_eigenpairs(ops, W, 7);
  REQUIRE(pairs.size() == 7);
  for (int k = 1; k <= 7; ++k) {
    const double expected = oracles::interval_eigenvalue(k, -1.0, 1.0) - 100.0;
    CHECK(std::fabs(pairs[k - 1].mu - expected) <= 1e-2);
  }
  CHECK(pairs[5].mu < 0.0);
  CHECK(pairs[6].mu > 0.0);
}

TEST_CASE("eigenpairs are B-orthonormal with small residuals") {
  Grid g = interval_grid(400);
  OperatorTriple ops = assemble_stiffness(g);
  PotentialDiag W = assemble_potential(g, PotentialField::constant(-100.0), 0.9);
  auto pairs = lowest_eigenpairs(ops, W, 6);
  const Eigen::VectorXd& B = ops.blocks[0].B;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    double bnorm = 0.0;
    for (int t = 0; t < g.n; ++t) bnorm += pairs[i].vec[t] * B[t] * pairs[i].vec[t];
    CHECK(std::fabs(bnorm - 1.0) <= 1e-10);
    for (std::size_t j = i + 1; j < pairs.size(); ++j) {
      double dot = 0.0;
      for (int t = 0; t < g.n; ++t) dot += pairs[i].vec[t] * B[t] * pairs[j].vec[t];
      CHECK(std::fabs(dot) <= 1e-8);
    }
  }
}

TEST_CASE("zero potential leaves the spectrum positive") {
  Grid g = interval_grid(300);
  OperatorTriple ops = assemble_stiffness(g);
  PotentialDiag W = assemble_potential(g, PotentialField::constant(0.0), 1.0);
  auto pairs = lowest_eigenpairs(ops, W, 5);
  for (const auto& p : pairs) CHECK(p.mu > 0.0);
  CHECK(negative_count(ops, W, 0.0) == 0);
}

TEST_CASE("disk mode 1 eigenvalue hits the Bessel oracle with degeneracy 2") {
  Grid g = disk_grid(2000, 2);
  OperatorTriple ops = assemble_stiffness(g);
  PotentialDiag W = assemble_potential(g, PotentialField::constant(-36.0), 1.0);
  auto pairs = lowest_eigenpairs(ops, W, 8);
  const double j11 = oracles::bessel_zero(1, 1);
  bool found = false;
  for (const auto& p : pairs) {
    if (p.block == 1 && !found) {
      CHECK(std::fabs(p.mu - (j11 * j11 - 36.0)) <= 0.05);
      CHECK(p.degeneracy == 2);
      found = true;
    }
  }
  CHECK(found);
}

TEST_CASE("Morse index: interval benchmark, zero field, disk multiplicities") {
  SUBCASE("interval c = 10 at r = 1 has index 6") {
    Grid g = interval_grid(2000);
    OperatorTriple ops = assemble_stiffness(g);
    PotentialDiag W = assemble_potential(g, PotentialField::constant(-100.0), 1.0);
    SpectrumSlice slice = compute_slice(ops, W, 1.0, 8, default_tol_zero(g, PotentialField::constant(-100.0)));
    CHECK(morse_index(slice) == 6);
  }
  SUBCASE("zero potential has index 0 everywhere") {
    Grid g = interval_grid(200);
    OperatorTriple ops = assemble_stiffness(g);
    PotentialDiag W = assemble_potential(g, PotentialField::constant(0.0), 0.7);
    SpectrumSlice slice = compute_slice(ops, W, 0.7, 4, 1e-8);
    CHECK(morse_index(slice) == 0);
  }
  SUBCASE("disk c = 6 at r = 1 has index 6 from modes 0, 1, 2") {
    Grid g = disk_grid(1500, 4);
    OperatorTriple ops = assemble_stiffness(g);
    PotentialField f = PotentialField::constant(-36.0);
    PotentialDiag W = assemble_potential(g, f, 1.0);
    SpectrumSlice slice = compute_slice(ops, W, 1.0, 10, default_tol_zero(g, f));
    CHECK(morse_index(slice) == 6);  // 2 (nu=0) + 2 (nu=1) + 2 (nu=2)
  }
}

TEST_CASE("slices escalate the pair count until the spectrum clears the tolerance") {
  Grid g = interval_grid(1000);
  OperatorTriple ops = assemble_stiffness(g);
  PotentialField f = PotentialField::constant(-100.0);
  PotentialDiag W = assemble_potential(g, f, 1.0);
  // ask for one pair; six eigenvalues are negative, so the slice must
  // keep extending until the largest retrieved value is positive
  SpectrumSlice slice = compute_slice(ops, W, 1.0, 1, default_tol_zero(g, f));
  CHECK(slice.negative_count == 6);
  REQUIRE(!slice.pairs.empty());
  CHECK(slice.pairs.back().mu > slice.tol_zero);
  CHECK(slice.pairs.size() >= 7);
}

TEST_CASE("an endpoint kernel raises IndeterminateIndex") {
  // c = pi/2 puts the first eigenvalue exactly at zero for r = 1
  Grid g = interval_grid(1000);
  OperatorTriple ops = assemble_stiffness(g);
  const double c = M_PI / 2.0;
  PotentialField f = PotentialField::constant(-c * c);
  PotentialDiag W = assemble_potential(g, f, 1.0);
  SpectrumSlice slice = compute_slice(ops, W, 1.0, 4, default_tol_zero(g, f));
  CHECK(slice.indeterminate);
  CHECK_THROWS_AS(morse_index(slice), IndeterminateIndex);
}

TEST_CASE("Morse index is nonincreasing in the zero tolerance") {
  Grid g = interval_grid(500);
  OperatorTriple ops = assemble_stiffness(g);
  PotentialDiag W = assemble_potential(g, PotentialField::constant(-100.0), 0.77);
  int prev = 1 << 20;
  for (double tol : {1e-10, 1e-6, 1e-3, 1e-1, 1.0, 10.0}) {
    const int idx = negative_count(ops, W, -tol);
    CHECK(idx <= prev);
    prev = idx;
  }
}

TEST_CASE("constant-field eigenvalue curves track (k pi/2)^2 - r^2 c^2 over the sweep range") {
  Grid g = interval_grid(500);
  OperatorTriple ops = assemble_stiffness(g);
  PotentialField f = PotentialField::constant(-100.0);
  for (double r : {0.05, 0.3, 0.55, 0.8, 1.0}) {
    PotentialDiag W = assemble_potential(g, f, r);
    auto pairs = lowest_eigenpairs(ops, W, 4);
    for (int k = 1; k <= 4; ++k) {
      const double expected = oracles::interval_eigenvalue(k, -1.0, 1.0) - r * r * 100.0;
      CHECK(std::fabs(pairs[k - 1].mu - expected) <= 2e-2);
    }
  }
}

TEST_CASE("kernel basis at the first interval crossing is the first Dirichlet mode") {
  Grid g = interval_grid(1200);
  OperatorTriple ops = assemble_stiffness(g);
  PotentialField f = PotentialField::constant(-100.0);
  const double r1 = M_PI / 20.0;
  PotentialDiag W = assemble_potential(g, f, r1);
  auto basis = kernel_basis(ops, W, 1e-3);
  REQUIRE(basis.size() == 1);
  CHECK(basis[0].angular == AngularKind::None);

  Eigen::VectorXd mode(g.n);
  for (int i = 0; i < g.n; ++i) mode[i] = std::sin(M_PI * (g.nodes[i] + 1.0) / 2.0);
  double bnorm = 0.0, overlap = 0.0;
  for (int i = 0; i < g.n; ++i) bnorm += g.base_weights[i] * mode[i] * mode[i];
  mode /= std::sqrt(bnorm);
  for (int i = 0; i < g.n; ++i) overlap += g.base_weights[i] * mode[i] * basis[0].radial[i];
  CHECK(std::fabs(std::fabs(overlap) - 1.0) <= 1e-4);
}

TEST_CASE("kernel basis at a disk mode-1 crossing has cos and sin copies") {
  Grid g = disk_grid(1200, 3);
  OperatorTriple ops = assemble_stiffness(g);
  PotentialField f = PotentialField::constant(-36.0);
  const double r_star = oracles::bessel_zero(1, 1) / 6.0;
  PotentialDiag W = assemble_potential(g, f, r_star);
  auto basis = kernel_basis(ops, W, 5e-3);
  REQUIRE(basis.size() == 2);
  CHECK(basis[0].nu == 1);
  CHECK(basis[0].angular == AngularKind::Cos);
  CHECK(basis[1].angular == AngularKind::Sin);
  CHECK((basis[0].radial - basis[1].radial).norm() == 0.0);
}

TEST_CASE("away from crossings the kernel is empty") {
  Grid g = interval_grid(600);
  OperatorTriple ops = assemble_stiffness(g);
  PotentialDiag W = assemble_potential(g, PotentialField::constant(-100.0), 0.25);
  CHECK_THROWS_AS(kernel_basis(ops, W, 1e-6), EmptyKernel);
}
