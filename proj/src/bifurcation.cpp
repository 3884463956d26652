// SPDX-License-Identifier: Apache-2.0
#include "starbif/bifurcation.hpp"

#include <Eigen/SparseLU>
#include <algorithm>
#include <cmath>
#include <limits>

namespace starbif {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

NonlinearProblem::NonlinearProblem(const Grid& g, const NonlinearitySpec& gs, int harmonics,
                                   int collocation)
    : grid_(&g), gs_(gs) {
  if (g.domain.kind == DomainKind::Interval) {
    harmonics_ = 0;
    collocation_ = 0;
    dofs_ = g.n;
    stiffness_.push_back(mode_stiffness(g, ModeBlock{0, 1.0, 1}));
    angular_factor_.push_back(1.0);
    return;
  }
  harmonics_ = harmonics;
  collocation_ = collocation;
  if (collocation_ < 4 * (harmonics_ + 1)) collocation_ = 4 * (harmonics_ + 1);
  dofs_ = g.n * (harmonics_ + 1);
  for (int p = 0; p <= harmonics_; ++p) {
    const ModeBlock mode{p, p == 0 ? 2.0 * kPi : kPi, p == 0 ? 1 : 2};
    stiffness_.push_back(mode_stiffness(g, mode));
    angular_factor_.push_back(mode.angular_factor);
  }
  cos_table_.resize(collocation_, harmonics_ + 1);
  for (int l = 0; l < collocation_; ++l)
    for (int p = 0; p <= harmonics_; ++p)
      cos_table_(l, p) = std::cos(p * (2.0 * kPi * l / collocation_));
}

Eigen::VectorXd NonlinearProblem::residual(double r, const Eigen::VectorXd& u) const {
  const Grid& g = *grid_;
  const double r2 = r * r;
  if (harmonics_ == 0) {
    Eigen::VectorXd F = stiffness_[0].apply(u);
    for (int i = 0; i < g.n; ++i)
      F[i] += r2 * g.base_weights[i] * gs_.g(r * g.nodes[i], u[i]);
    return F;
  }
  const int P = harmonics_;
  Eigen::VectorXd F(dofs_);
  // stiffness, block-diagonal over harmonics
  for (int p = 0; p <= P; ++p) {
    const TriDiag& K = stiffness_[p];
    for (int j = 0; j < g.n; ++j) {
      double acc = K.diag[j] * u[j * (P + 1) + p];
      if (j > 0) acc += K.off[j - 1] * u[(j - 1) * (P + 1) + p];
      if (j + 1 < g.n) acc += K.off[j] * u[(j + 1) * (P + 1) + p];
      F[j * (P + 1) + p] = acc;
    }
  }
  // nonlinear term by angular collocation, projected back per harmonic
  Eigen::VectorXd gvals(collocation_);
  for (int j = 0; j < g.n; ++j) {
    const double s = r * g.nodes[j];
    for (int l = 0; l < collocation_; ++l) {
      double uval = 0.0;
      for (int p = 0; p <= P; ++p) uval += u[j * (P + 1) + p] * cos_table_(l, p);
      gvals[l] = gs_.g(s, uval);
    }
    for (int p = 0; p <= P; ++p) {
      double proj = 0.0;
      for (int l = 0; l < collocation_; ++l) proj += gvals[l] * cos_table_(l, p);
      proj *= (p == 0 ? 1.0 : 2.0) / collocation_;
      F[j * (P + 1) + p] += r2 * angular_factor_[p] * g.base_weights[j] * proj;
    }
  }
  return F;
}

Eigen::SparseMatrix<double> NonlinearProblem::jacobian(double r, const Eigen::VectorXd& u) const {
  const Grid& g = *grid_;
  const double r2 = r * r;
  std::vector<Eigen::Triplet<double>> trip;
  if (harmonics_ == 0) {
    trip.reserve(3 * g.n);
    const TriDiag& K = stiffness_[0];
    for (int i = 0; i < g.n; ++i) {
      trip.emplace_back(i, i,
                        K.diag[i] + r2 * g.base_weights[i] * gs_.dg_dxi(r * g.nodes[i], u[i]));
      if (i + 1 < g.n) {
        trip.emplace_back(i, i + 1, K.off[i]);
        trip.emplace_back(i + 1, i, K.off[i]);
      }
    }
  } else {
    const int P = harmonics_;
    trip.reserve(g.n * (P + 1) * (P + 4));
    for (int p = 0; p <= P; ++p) {
      const TriDiag& K = stiffness_[p];
      for (int j = 0; j < g.n; ++j) {
        trip.emplace_back(j * (P + 1) + p, j * (P + 1) + p, K.diag[j]);
        if (j + 1 < g.n) {
          trip.emplace_back(j * (P + 1) + p, (j + 1) * (P + 1) + p, K.off[j]);
          trip.emplace_back((j + 1) * (P + 1) + p, j * (P + 1) + p, K.off[j]);
        }
      }
    }
    Eigen::VectorXd dvals(collocation_);
    for (int j = 0; j < g.n; ++j) {
      const double s = r * g.nodes[j];
      for (int l = 0; l < collocation_; ++l) {
        double uval = 0.0;
        for (int p = 0; p <= P; ++p) uval += u[j * (P + 1) + p] * cos_table_(l, p);
        dvals[l] = gs_.dg_dxi(s, uval);
      }
      for (int p = 0; p <= P; ++p) {
        const double scale =
            r2 * angular_factor_[p] * g.base_weights[j] * ((p == 0 ? 1.0 : 2.0) / collocation_);
        for (int q = 0; q <= P; ++q) {
          double acc = 0.0;
          for (int l = 0; l < collocation_; ++l)
            acc += dvals[l] * cos_table_(l, p) * cos_table_(l, q);
          trip.emplace_back(j * (P + 1) + p, j * (P + 1) + q, scale * acc);
        }
      }
    }
  }
  Eigen::SparseMatrix<double> J(dofs_, dofs_);
  J.setFromTriplets(trip.begin(), trip.end());
  return J;
}

double NonlinearProblem::energy(double r, const Eigen::VectorXd& u) const {
  const Grid& g = *grid_;
  const double r2 = r * r;
  if (harmonics_ == 0) {
    double acc = 0.5 * stiffness_[0].bilinear(u, u);
    for (int i = 0; i < g.n; ++i)
      acc += r2 * g.base_weights[i] * gs_.primitive(r * g.nodes[i], u[i]);
    return acc;
  }
  const int P = harmonics_;
  double acc = 0.0;
  for (int p = 0; p <= P; ++p) {
    Eigen::VectorXd ap(g.n);
    for (int j = 0; j < g.n; ++j) ap[j] = u[j * (P + 1) + p];
    acc += 0.5 * stiffness_[p].bilinear(ap, ap);
  }
  for (int j = 0; j < g.n; ++j) {
    const double s = r * g.nodes[j];
    double cell = 0.0;
    for (int l = 0; l < collocation_; ++l) {
      double uval = 0.0;
      for (int p = 0; p <= P; ++p) uval += u[j * (P + 1) + p] * cos_table_(l, p);
      cell += gs_.primitive(s, uval);
    }
    acc += r2 * g.base_weights[j] * (2.0 * kPi / collocation_) * cell;
  }
  return acc;
}

NewtonResult NonlinearProblem::newton_solve(double r, const Eigen::VectorXd& u0,
                                            double tol_newton, int max_iter) const {
  NewtonResult res;
  res.u = u0;
  Eigen::VectorXd F = residual(r, res.u);
  double fnorm = F.norm();
  res.residual_history.push_back(fnorm);

  Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
  for (int it = 0; it < max_iter; ++it) {
    if (fnorm <= tol_newton * (1.0 + res.u.norm())) {
      res.converged = true;
      res.iterations = it;
      return res;
    }
    lu.compute(jacobian(r, res.u));
    if (lu.info() != Eigen::Success) break;
    const Eigen::VectorXd step = lu.solve(-F);
    if (!step.allFinite()) break;

    // step-halving line search on the residual norm
    double lambda = 1.0;
    Eigen::VectorXd u_next;
    Eigen::VectorXd F_next;
    double fnorm_next = 0.0;
    bool accepted = false;
    for (int halvings = 0; halvings < 30; ++halvings) {
      u_next = res.u + lambda * step;
      F_next = residual(r, u_next);
      fnorm_next = F_next.norm();
      if (fnorm_next < fnorm) {
        accepted = true;
        break;
      }
      lambda *= 0.5;
    }
    if (!accepted) break;
    res.u = u_next;
    F = F_next;
    fnorm = fnorm_next;
    res.residual_history.push_back(fnorm);
  }
  res.converged = fnorm <= tol_newton * (1.0 + res.u.norm());
  res.iterations = static_cast<int>(res.residual_history.size()) - 1;
  return res;
}

double NonlinearProblem::h1_norm(const Eigen::VectorXd& u) const {
  const Grid& g = *grid_;
  if (harmonics_ == 0) return std::sqrt(std::max(0.0, stiffness_[0].bilinear(u, u)));
  const int P = harmonics_;
  double acc = 0.0;
  for (int p = 0; p <= P; ++p) {
    Eigen::VectorXd ap(g.n);
    for (int j = 0; j < g.n; ++j) ap[j] = u[j * (P + 1) + p];
    acc += stiffness_[p].bilinear(ap, ap);
  }
  return std::sqrt(std::max(0.0, acc));
}

double NonlinearProblem::l2_norm(const Eigen::VectorXd& u) const {
  const Grid& g = *grid_;
  double acc = 0.0;
  if (harmonics_ == 0) {
    for (int i = 0; i < g.n; ++i) acc += g.base_weights[i] * u[i] * u[i];
    return std::sqrt(acc);
  }
  const int P = harmonics_;
  for (int j = 0; j < g.n; ++j)
    for (int p = 0; p <= P; ++p) {
      const double a = u[j * (P + 1) + p];
      acc += angular_factor_[p] * g.base_weights[j] * a * a;
    }
  return std::sqrt(acc);
}

Eigen::VectorXd NonlinearProblem::seed_from_kernel(const KernelVector& kv,
                                                   double amplitude) const {
  Eigen::VectorXd u = Eigen::VectorXd::Zero(dofs_);
  const Grid& g = *grid_;
  if (harmonics_ == 0) {
    u = amplitude * kv.radial;
    return u;
  }
  // sin profiles are rotations of cos profiles; the reduced space holds
  // the cos representative of the orbit
  if (kv.nu > harmonics_)
    throw NumericalFailure("kernel mode " + std::to_string(kv.nu) +
                           " exceeds the harmonic range of the nonlinear space");
  for (int j = 0; j < g.n; ++j) u[j * (harmonics_ + 1) + kv.nu] = amplitude * kv.radial[j];
  return u;
}

double NonlinearProblem::quartic_integral(const KernelVector& kv, double r) const {
  const Grid& g = *grid_;
  double acc = 0.0;
  for (int j = 0; j < g.n; ++j) {
    const double v2 = kv.radial[j] * kv.radial[j];
    acc += g.base_weights[j] * gs_.kappa(r * g.nodes[j]) * v2 * v2;
  }
  if (g.domain.kind == DomainKind::Interval) return acc;
  // angular integral of cos^4: 2 pi (nu = 0) or 3 pi / 4 (nu >= 1)
  return acc * (kv.nu == 0 ? 2.0 * kPi : 0.75 * kPi);
}

std::optional<double> NonlinearProblem::predict_amplitude(const KernelVector& kv,
                                                          double gamma_diag, double r_star,
                                                          double r) const {
  const double mu_est = gamma_diag * (r - r_star);
  const double c4 = quartic_integral(kv, r);
  const double denom = r * r * c4;
  if (std::fabs(denom) < 1e-300) return std::nullopt;
  const double a2 = -mu_est / denom;
  if (!(a2 > 0.0)) return std::nullopt;
  return std::sqrt(a2);
}

double NonlinearProblem::crossing_slope(const KernelVector& kv, double r_star) const {
  const Grid& g = *grid_;
  const PotentialField& f = gs_.f;
  double acc = 0.0;
  for (int j = 0; j < g.n; ++j) {
    const double s = g.nodes[j];
    const double cw = 2.0 * r_star * f(r_star * s) + r_star * r_star * f.derivative(r_star * s) * s;
    acc += g.base_weights[j] * cw * kv.radial[j] * kv.radial[j];
  }
  const double alpha = g.domain.kind == DomainKind::Interval
                           ? 1.0
                           : (kv.nu == 0 ? 2.0 * kPi : kPi);
  return alpha * acc;
}

namespace {

struct FitLine {
  double slope = 0.0;
  double intercept = 0.0;
};

FitLine least_squares(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  FitLine fit;
  const double det = n * sxx - sx * sx;
  if (det != 0.0) {
    fit.slope = (n * sxy - sx * sy) / det;
    fit.intercept = (sy * sxx - sx * sxy) / det;
  }
  return fit;
}

struct ProbeSample {
  double r;
  double h1;
  double l2;
};

}  // namespace

std::optional<BranchSample> branch_probe(const NonlinearProblem& problem, const ConjugatePoint& cp,
                                         double neighbor_spacing, const ProbeParams& params) {
  const Grid& g = problem.grid();
  const double eps_default = params.seed_amplitude > 0.0
                                 ? params.seed_amplitude
                                 : 0.1 / std::sqrt(g.domain.diameter());

  std::vector<double> deltas;
  for (double frac : params.delta_fractions)
    deltas.push_back(std::min(frac * neighbor_spacing, params.delta_cap));
  std::sort(deltas.rbegin(), deltas.rend());

  // distinct kernel representatives (cos/sin copies collapse to one)
  std::vector<const KernelVector*> reps;
  for (const KernelVector& kv : cp.kernel) {
    bool dup = false;
    for (const KernelVector* r : reps)
      if (r->block == kv.block && r->nu == kv.nu) dup = true;
    if (!dup) reps.push_back(&kv);
  }

  std::vector<double> slopes;
  for (const KernelVector* kv : reps) slopes.push_back(problem.crossing_slope(*kv, cp.r_star));

  std::optional<BranchSample> best;
  for (int side : {+1, -1}) {
    std::vector<ProbeSample> samples;
    for (double delta : deltas) {
      const double r_p = cp.r_star + side * delta;
      if (!(r_p > 1e-3 && r_p <= 1.0)) continue;
      bool found = false;
      for (std::size_t rep = 0; rep < reps.size(); ++rep) {
        const KernelVector* kv = reps[rep];
        std::vector<double> amplitudes;
        if (auto a = problem.predict_amplitude(*kv, slopes[rep], cp.r_star, r_p)) {
          amplitudes.push_back(*a);
          amplitudes.push_back(-*a);
        }
        amplitudes.push_back(eps_default);
        amplitudes.push_back(-eps_default);
        for (double amp : amplitudes) {
          const Eigen::VectorXd u0 = problem.seed_from_kernel(*kv, amp);
          const NewtonResult res =
              problem.newton_solve(r_p, u0, params.tol_newton, params.max_newton);
          if (!res.converged) continue;
          const double h1 = problem.h1_norm(res.u);
          if (h1 > 10.0 * params.tol_newton) {
            samples.push_back(ProbeSample{r_p, h1, problem.l2_norm(res.u)});
            found = true;
            break;
          }
        }
        if (found) break;
      }
    }
    if (samples.size() < 2) continue;

    BranchSample branch;
    branch.side = side;
    bool decay = true;
    for (std::size_t i = 0; i < samples.size(); ++i) {
      branch.r.push_back(samples[i].r);
      branch.h1_norms.push_back(samples[i].h1);
      branch.l2_norms.push_back(samples[i].l2);
      if (i > 0 && samples[i].h1 >= samples[i - 1].h1 * (1.0 + 1e-9)) decay = false;
    }
    branch.norms_decay = decay;

    // extrapolate ||u||_H1^2 -> 0 linearly in r over the innermost samples
    const std::size_t use = std::min<std::size_t>(3, samples.size());
    std::vector<double> xs, ys;
    for (std::size_t i = samples.size() - use; i < samples.size(); ++i) {
      xs.push_back(samples[i].r);
      ys.push_back(samples[i].h1 * samples[i].h1);
    }
    const FitLine fit = least_squares(xs, ys);
    branch.extrapolated_root =
        fit.slope != 0.0 ? -fit.intercept / fit.slope : cp.r_star + side * deltas.back();

    if (!best || branch.r.size() > best->r.size() ||
        (branch.r.size() == best->r.size() &&
         std::fabs(branch.extrapolated_root - cp.r_star) <
             std::fabs(best->extrapolated_root - cp.r_star)))
      best = std::move(branch);
  }
  return best;
}

ScanFindings bifurcation_scan(const NonlinearProblem& problem,
                              const std::vector<ConjugatePoint>& crossings, int morse_full,
                              const ProbeParams& params) {
  ScanFindings findings;
  const Grid& g = problem.grid();
  const double eps_default = params.seed_amplitude > 0.0
                                 ? params.seed_amplitude
                                 : 0.1 / std::sqrt(g.domain.diameter());

  // branch probes at every crossing
  for (std::size_t i = 0; i < crossings.size(); ++i) {
    double left = i > 0 ? crossings[i].r_star - crossings[i - 1].r_star
                        : crossings[i].r_star;
    double right = i + 1 < crossings.size() ? crossings[i + 1].r_star - crossings[i].r_star
                                            : 1.0 - crossings[i].r_star;
    const double spacing = std::max(1e-6, std::min(left, right));
    auto branch = branch_probe(problem, crossings[i], spacing, params);
    if (branch && branch->norms_decay) {
      BifurcationPoint bp;
      bp.r_detected = branch->extrapolated_root;
      bp.conjugate_index = static_cast<int>(i);
      bp.distance = std::fabs(bp.r_detected - crossings[i].r_star);
      bp.witness = std::move(*branch);
      findings.points.push_back(std::move(bp));
    } else {
      findings.undetected.push_back(static_cast<int>(i));
    }
  }

  // no-spurious probes at midpoints, seeded with the lowest eigenvector
  // of the linearization there (implicit-function-theorem direction:
  // small seeds must collapse back onto the trivial branch)
  if (crossings.size() >= 2) {
    const OperatorTriple ops = assemble_stiffness(g);
    for (std::size_t i = 0; i + 1 < crossings.size(); ++i) {
      const double r_m = 0.5 * (crossings[i].r_star + crossings[i + 1].r_star);
      const PotentialDiag W = assemble_potential(g, problem.nonlinearity().f, r_m);
      const std::vector<EigenPair> pairs = lowest_eigenpairs(ops, W, 1);
      const ModeBlock& mode = ops.blocks[pairs[0].block].mode;
      KernelVector seed_dir{pairs[0].block, mode.nu,
                            mode.degeneracy == 2
                                ? AngularKind::Cos
                                : (mode.nu == 0 && ops.block_count() > 1 ? AngularKind::Axial
                                                                         : AngularKind::None),
                            pairs[0].vec};
      double worst = 0.0;
      bool trivial = true;
      for (double sign : {+1.0, -1.0}) {
        const Eigen::VectorXd u0 = problem.seed_from_kernel(seed_dir, sign * eps_default);
        const NewtonResult res =
            problem.newton_solve(r_m, u0, params.tol_newton, params.max_newton);
        const double h1 = res.converged ? problem.h1_norm(res.u)
                                        : std::numeric_limits<double>::infinity();
        worst = std::max(worst, h1);
        if (!res.converged || h1 > 10.0 * params.tol_newton) trivial = false;
      }
      findings.midpoint_rs.push_back(r_m);
      findings.midpoint_norms.push_back(worst);
      if (!trivial) findings.no_spurious = false;
    }
  }

  // distinct-bifurcation-point lower bound floor(M / max m)
  int max_mult = 0;
  for (const ConjugatePoint& cp : crossings) max_mult = std::max(max_mult, cp.multiplicity);
  findings.corollary_bound = max_mult > 0 ? morse_full / max_mult : 0;
  findings.corollary_holds =
      static_cast<int>(findings.points.size()) >= findings.corollary_bound;

  bool all_match = findings.undetected.empty();
  for (const BifurcationPoint& bp : findings.points)
    if (bp.distance > params.match_tol) all_match = false;
  findings.equivalence_holds = crossings.empty() ? true : all_match;
  return findings;
}

}  // namespace starbif
