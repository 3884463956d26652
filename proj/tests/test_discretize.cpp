// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "starbif/expr.hpp"
#include "starbif/operators.hpp"
#include "starbif/spectrum.hpp"
#include "starbif/tridiag_eigen.hpp"

using namespace starbif;

namespace {
Domain interval(double a, double b) { return make_domain({DomainKind::Interval, a, b, 0.0}); }
Domain disk(double R) { return make_domain({DomainKind::Disk, 0.0, 0.0, R}); }
}  // namespace

TEST_CASE("interval grid: uniform interior nodes") {
  Grid g = build_grid(interval(-1.0, 1.0), 9);
  CHECK(g.h == doctest::Approx(0.2));
  CHECK(g.nodes[0] == doctest::Approx(-0.8));
  CHECK(g.nodes[8] == doctest::Approx(0.8));
  CHECK(g.nodes[4] == doctest::Approx(0.0));
  for (int i = 0; i < g.n; ++i) {
    CHECK(g.nodes[i] > -1.0);
    CHECK(g.nodes[i] < 1.0);
    CHECK(g.base_weights[i] == doctest::Approx(g.h));
  }
  Grid g2 = build_grid(interval(-1.0, 1.0), 1999);
  CHECK(g2.h == doctest::Approx(0.001));
  CHECK_THROWS_AS(build_grid(interval(-1.0, 1.0), 3), ConfigError);
}

TEST_CASE("disk grid: radial nodes shared across modes") {
  Grid g = build_grid(disk(1.0), 9, 4);
  CHECK(g.h == doctest::Approx(0.1));
  CHECK(g.nodes[0] == doctest::Approx(0.1));
  CHECK(g.nodes[8] == doctest::Approx(0.9));
  REQUIRE(g.modes.size() == 5);
  CHECK(g.modes[0].degeneracy == 1);
  CHECK(g.modes[1].degeneracy == 2);
  CHECK(g.modes[0].angular_factor == doctest::Approx(2.0 * M_PI));
  CHECK(g.modes[3].angular_factor == doctest::Approx(M_PI));
}

TEST_CASE("quadrature weights sum to the domain measure at first order") {
  // interval: |Omega| - sum w = h exactly, so halving h halves the defect
  auto defect1 = [](int n) {
    Grid g = build_grid(interval(-0.5, 1.5), n);
    return g.domain.measure() - g.base_weights.sum();
  };
  const double d1 = defect1(100), d2 = defect1(201);
  CHECK(d1 / d2 == doctest::Approx(2.0).epsilon(0.02));

  auto defect2 = [](int n) {
    Grid g = build_grid(disk(1.3), n, 0);
    return g.domain.measure() - 2.0 * M_PI * g.base_weights.sum();
  };
  const double e1 = defect2(100), e2 = defect2(201);
  CHECK(e1 / e2 == doctest::Approx(2.0).epsilon(0.02));
}

TEST_CASE("interval stiffness is the energy-scaled second-difference matrix") {
  Grid g = build_grid(interval(-1.0, 1.0), 15);
  OperatorTriple ops = assemble_stiffness(g);
  REQUIRE(ops.block_count() == 1);
  const TriDiag& K = ops.blocks[0].K;
  for (int i = 0; i < g.n; ++i) CHECK(K.diag[i] == doctest::Approx(2.0 / g.h));
  for (int i = 0; i < g.n - 1; ++i) CHECK(K.off[i] == doctest::Approx(-1.0 / g.h));
  // energy of a linear-in-x hat profile: u^T K u approximates the Dirichlet integral
  Eigen::VectorXd u(g.n);
  for (int i = 0; i < g.n; ++i) u[i] = 1.0 - std::fabs(g.nodes[i]);
  CHECK(K.bilinear(u, u) == doctest::Approx(2.0).epsilon(1e-12));  // int of (u')^2 = 2
}

TEST_CASE("lowest pencil eigenvalue matches the closed-form Dirichlet value") {
  Grid g = build_grid(interval(-1.0, 1.0), 2000);
  OperatorTriple ops = assemble_stiffness(g);
  PotentialDiag W = assemble_potential(g, PotentialField::constant(0.0), 1.0);
  auto pairs = lowest_eigenpairs(ops, W, 1);
  const double exact = oracles::interval_eigenvalue(1, -1.0, 1.0);  // (pi/2)^2
  CHECK(std::fabs(pairs[0].mu - exact) / exact <= 1e-5);
}

TEST_CASE("lowest disk mode-0 eigenvalue matches the Bessel oracle") {
  Grid g = build_grid(disk(1.0), 2000, 0);
  OperatorTriple ops = assemble_stiffness(g);
  PotentialDiag W = assemble_potential(g, PotentialField::constant(0.0), 1.0);
  auto pairs = lowest_eigenpairs(ops, W, 1);
  const double j01 = oracles::bessel_zero(0, 1);
  CHECK(std::fabs(pairs[0].mu - j01 * j01) / (j01 * j01) <= 1e-4);
}

TEST_CASE("eigenvalue convergence is second order in h") {
  auto lowest_err = [](int n) {
    Grid g = build_grid(interval(-1.0, 1.0), n);
    OperatorTriple ops = assemble_stiffness(g);
    PotentialDiag W = assemble_potential(g, PotentialField::constant(0.0), 1.0);
    return std::fabs(lowest_eigenpairs(ops, W, 1)[0].mu -
                     oracles::interval_eigenvalue(1, -1.0, 1.0));
  };
  const double e1 = lowest_err(250), e2 = lowest_err(501);
  CHECK(e1 / e2 >= 3.5);
  CHECK(e1 / e2 <= 4.5);
}

TEST_CASE("potential assembly: diagonal entries r^2 f(r x) w") {
  Grid g = build_grid(interval(-1.0, 1.0), 31);
  SUBCASE("constant field") {
    PotentialDiag W = assemble_potential(g, PotentialField::constant(-100.0), 0.5);
    for (int i = 0; i < g.n; ++i)
      CHECK(W.blocks[0][i] == doctest::Approx(-25.0 * g.base_weights[i]));
  }
  SUBCASE("r = 0 gives the zero matrix") {
    PotentialDiag W = assemble_potential(g, PotentialField::constant(-100.0), 0.0);
    CHECK(W.blocks[0].cwiseAbs().maxCoeff() == 0.0);
  }
  SUBCASE("radial quadratic at a specific node") {
    PotentialField f = PotentialField::radial_poly({0.0, 1.0});  // |x|^2
    PotentialDiag W = assemble_potential(g, f, 0.5);
    // node at x = 0.5 exists for n = 31 (h = 1/16)
    int idx = -1;
    for (int i = 0; i < g.n; ++i)
      if (std::fabs(g.nodes[i] - 0.5) < 1e-12) idx = i;
    REQUIRE(idx >= 0);
    CHECK(W.blocks[0][idx] == doctest::Approx(0.015625 * g.base_weights[idx]));
  }
}

TEST_CASE("evaluator failures carry the offending node in the diagnostic") {
  Grid g = build_grid(interval(-1.0, 1.0), 31);  // odd n puts a node at x = 0
  PotentialField f = parse_potential_expr("1 / x", 1, 2.0);
  try {
    assemble_potential(g, f, 0.5);
    FAIL("expected NumericalFailure");
  } catch (const NumericalFailure& err) {
    const std::string what = err.what();
    CHECK(what.find("node 15") != std::string::npos);
  }
}

TEST_CASE("potential field derivative matches finite differences of the evaluator") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> coeff(-5.0, 5.0);
  std::uniform_real_distribution<double> pos(-0.95, 0.95);
  for (int trial = 0; trial < 100; ++trial) {
    PotentialField f = PotentialField::radial_poly({coeff(rng), coeff(rng), coeff(rng)});
    const double s = pos(rng);
    const double hf = 1e-5;
    const double fd = (f(s + hf) - f(s - hf)) / (2.0 * hf);
    CHECK(f.derivative(s) == doctest::Approx(fd).epsilon(1e-7));
  }
  CHECK(PotentialField::constant(3.0).derivative(0.4) == 0.0);
}

TEST_CASE("hessian form: zero vector, positivity, closed-form value on the first mode") {
  Grid g = build_grid(interval(-1.0, 1.0), 500);
  OperatorTriple ops = assemble_stiffness(g);
  PotentialField f = PotentialField::constant(-100.0);

  CHECK(evaluate_hessian_form(g, ops, f, 0.5, 0, Eigen::VectorXd::Zero(g.n)) == 0.0);

  // first Dirichlet mode, normalized against B
  Eigen::VectorXd u(g.n);
  for (int i = 0; i < g.n; ++i) u[i] = std::sin(M_PI * (g.nodes[i] + 1.0) / 2.0);
  double bnorm = 0.0;
  for (int i = 0; i < g.n; ++i) bnorm += g.base_weights[i] * u[i] * u[i];
  u /= std::sqrt(bnorm);
  const double r = 0.3;
  const double expected = oracles::interval_eigenvalue(1, -1.0, 1.0) - r * r * 100.0;
  CHECK(evaluate_hessian_form(g, ops, f, r, 0, u) == doctest::Approx(expected).epsilon(1e-4));

  std::mt19937 rng(11);
  std::normal_distribution<double> gauss;
  PotentialField zero = PotentialField::constant(0.0);
  for (int trial = 0; trial < 20; ++trial) {
    Eigen::VectorXd v(g.n);
    for (int i = 0; i < g.n; ++i) v[i] = gauss(rng);
    CHECK(evaluate_hessian_form(g, ops, zero, 0.7, 0, v) > 0.0);
  }
}

TEST_CASE("hessian form is exactly quadratic in r for constant coefficients") {
  Grid g = build_grid(interval(-1.0, 1.0), 200);
  OperatorTriple ops = assemble_stiffness(g);
  PotentialField f = PotentialField::constant(-7.5);
  std::mt19937 rng(5);
  std::normal_distribution<double> gauss;
  Eigen::VectorXd u(g.n);
  for (int i = 0; i < g.n; ++i) u[i] = gauss(rng);
  u /= std::sqrt(ops.blocks[0].K.bilinear(u, u));  // keep the form O(1) so the
  const double r = 0.4;                            // quotient cancellation stays at eps/delta
  auto central = [&](double delta) {
    return (evaluate_hessian_form(g, ops, f, r + delta, 0, u) -
            evaluate_hessian_form(g, ops, f, r - delta, 0, u)) /
           (2.0 * delta);
  };
  const double d1 = central(1e-2), d2 = central(1e-3);
  CHECK(std::fabs(d1 - d2) <= 1e-9 * std::fabs(d1));
}

TEST_CASE("energy: zero state, exact quadratic reduction, one-mode quartic expansion") {
  Grid g = build_grid(interval(-1.0, 1.0), 500);
  OperatorTriple ops = assemble_stiffness(g);
  NonlinearitySpec quad;
  quad.f = PotentialField::constant(-100.0);
  quad.q = PotentialField::constant(0.0);
  quad.kappa = PotentialField::constant(0.0);

  CHECK(evaluate_energy(g, ops, quad, 0.5, 0, Eigen::VectorXd::Zero(g.n)) == 0.0);

  std::mt19937 rng(3);
  std::normal_distribution<double> gauss;
  Eigen::VectorXd u(g.n);
  for (int i = 0; i < g.n; ++i) u[i] = gauss(rng);
  const double r = 0.6;
  CHECK(evaluate_energy(g, ops, quad, r, 0, u) ==
        doctest::Approx(0.5 * evaluate_hessian_form(g, ops, quad.f, r, 0, u)).epsilon(1e-12));

  // cubic nonlinearity, one-mode state eps * mode_1
  NonlinearitySpec cubic = quad;
  cubic.kappa = PotentialField::constant(1.0);
  Eigen::VectorXd mode(g.n);
  for (int i = 0; i < g.n; ++i) mode[i] = std::sin(M_PI * (g.nodes[i] + 1.0) / 2.0);
  double bnorm = 0.0;
  for (int i = 0; i < g.n; ++i) bnorm += g.base_weights[i] * mode[i] * mode[i];
  mode /= std::sqrt(bnorm);
  const double eps = 0.5;
  const double mu = oracles::interval_eigenvalue(1, -1.0, 1.0) - r * r * 100.0;
  const double expected = 0.5 * eps * eps * mu + 0.25 * r * r * std::pow(eps, 4) * 0.75;
  CHECK(evaluate_energy(g, ops, cubic, r, 0, eps * mode) ==
        doctest::Approx(expected).epsilon(1e-3));
}

TEST_CASE("negative-eigenvalue count is invariant under SPD reweighting") {
  std::mt19937 rng(2024);
  std::uniform_real_distribution<double> fval(-200.0, 50.0);
  std::uniform_real_distribution<double> rval(0.1, 1.0);
  std::uniform_real_distribution<double> wval(0.2, 5.0);
  Grid g = build_grid(interval(-1.0, 1.0), 60);
  OperatorTriple ops = assemble_stiffness(g);
  for (int trial = 0; trial < 100; ++trial) {
    PotentialDiag W = assemble_potential(g, PotentialField::constant(fval(rng)), rval(rng));
    // inertia of the *form* K + W: identical for the B-pencil, the
    // identity pencil, and any random SPD diagonal pencil
    auto count_with = [&](const Eigen::VectorXd& B) {
      Eigen::VectorXd d(g.n), e(g.n - 1);
      for (int i = 0; i < g.n; ++i)
        d[i] = (ops.blocks[0].K.diag[i] + W.blocks[0][i]) / B[i];
      for (int i = 0; i < g.n - 1; ++i)
        e[i] = ops.blocks[0].K.off[i] / std::sqrt(B[i] * B[i + 1]);
      return tridiag::count_below(d, e, 0.0);
    };
    Eigen::VectorXd random_spd(g.n);
    for (int i = 0; i < g.n; ++i) random_spd[i] = wval(rng);
    const int with_mass = count_with(ops.blocks[0].B);
    CHECK(with_mass == count_with(Eigen::VectorXd::Ones(g.n)));
    CHECK(with_mass == count_with(random_spd));
  }
}

TEST_CASE("pencil matrices satisfy the structural invariants") {
  for (bool is_disk : {false, true}) {
    Grid g = is_disk ? build_grid(disk(1.0), 120, 3) : build_grid(interval(-0.7, 1.3), 120);
    OperatorTriple ops = assemble_stiffness(g);
    for (const auto& blk : ops.blocks) {
      CHECK(blk.B.minCoeff() > 0.0);
      // all Ritz values of K positive (Dirichlet energy is SPD)
      Eigen::VectorXd d(blk.K.size()), e(blk.K.size() - 1);
      for (int i = 0; i < blk.K.size(); ++i) d[i] = blk.K.diag[i] / blk.B[i];
      for (int i = 0; i < blk.K.size() - 1; ++i)
        e[i] = blk.K.off[i] / std::sqrt(blk.B[i] * blk.B[i + 1]);
      CHECK(tridiag::count_below(d, e, 0.0) == 0);
    }
  }
}
