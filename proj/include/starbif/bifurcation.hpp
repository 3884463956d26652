// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Core>
#include <Eigen/SparseCore>
#include <optional>
#include <vector>

#include "starbif/nonlinearity.hpp"
#include "starbif/sweep.hpp"

namespace starbif {

struct NewtonResult {
  bool converged = false;
  Eigen::VectorXd u;
  int iterations = 0;
  std::vector<double> residual_history;
};

struct ProbeParams {
  double seed_amplitude = -1.0;  // < 0: auto 0.1 * diameter^{-1/2}
  std::vector<double> delta_fractions = {0.08, 0.04, 0.02, 0.01};
  double delta_cap = 0.08;
  double tol_newton = 1e-10;
  int max_newton = 50;
  double match_tol = 5e-3;
};

/// Nontrivial solutions found on one side of a conjugate point, with
/// their norms decaying toward the crossing.
struct BranchSample {
  int side = 0;  // +1: r > r_star, -1: r < r_star
  std::vector<double> r;
  std::vector<double> h1_norms;  // sqrt(u^T K u)
  std::vector<double> l2_norms;
  bool norms_decay = false;
  double extrapolated_root = 0.0;  // zero of the h1^2-vs-r fit
};

struct BifurcationPoint {
  double r_detected = 0.0;
  int conjugate_index = -1;
  double distance = 0.0;  // |r_detected - r_star|
  BranchSample witness;
};

struct ScanFindings {
  std::vector<BifurcationPoint> points;
  std::vector<int> undetected;        // conjugate indices with no branch found
  std::vector<double> midpoint_rs;    // probed between consecutive crossings
  std::vector<double> midpoint_norms; // expected to collapse to the trivial solution
  bool no_spurious = true;
  int corollary_bound = 0;            // floor(M / max multiplicity)
  bool corollary_holds = false;
  bool equivalence_holds = false;     // every crossing matched within match_tol
};

/// Discrete semilinear problem K u + r^2 W[g(r x, u)] = 0. On the
/// interval the state is nodal. On the disk the state lives in the
/// rotation-reduced even Fourier subspace sum_p a_p(rho) cos(p theta),
/// p = 0..harmonics, with the nonlinearity applied by angular
/// collocation; the subspace is closed under polynomial nonlinearities
/// and contains a representative of every bifurcating branch orbit.
class NonlinearProblem {
 public:
  NonlinearProblem(const Grid& g, const NonlinearitySpec& gs, int harmonics = 6,
                   int collocation = 32);

  int dof_count() const { return dofs_; }
  int harmonics() const { return harmonics_; }

  Eigen::VectorXd residual(double r, const Eigen::VectorXd& u) const;
  Eigen::SparseMatrix<double> jacobian(double r, const Eigen::VectorXd& u) const;
  double energy(double r, const Eigen::VectorXd& u) const;

  /// Full Newton with step-halving line search on the residual norm.
  /// Convergence: ||F|| <= tol (1 + ||u||).
  NewtonResult newton_solve(double r, const Eigen::VectorXd& u0, double tol_newton,
                            int max_iter) const;

  double h1_norm(const Eigen::VectorXd& u) const;
  double l2_norm(const Eigen::VectorXd& u) const;

  Eigen::VectorXd seed_from_kernel(const KernelVector& kv, double amplitude) const;

  /// One-mode Galerkin quartic coefficient: integral of kappa(r x) phi^4
  /// for the B-normalized kernel vector (angular integral exact).
  double quartic_integral(const KernelVector& kv, double r) const;

  /// Pitchfork amplitude prediction sqrt(-gamma (r - r_star) / (r^2 c4)),
  /// empty when the sign structure admits no branch on this side.
  std::optional<double> predict_amplitude(const KernelVector& kv, double gamma_diag,
                                          double r_star, double r) const;

  /// d mu / dr of the crossing eigenvalue carried by kv, i.e. the volume
  /// crossing form applied to it.
  double crossing_slope(const KernelVector& kv, double r_star) const;

  const Grid& grid() const { return *grid_; }
  const NonlinearitySpec& nonlinearity() const { return gs_; }

 private:
  const Grid* grid_;
  NonlinearitySpec gs_;
  int harmonics_ = 0;   // 0 on the interval
  int collocation_ = 0;
  int dofs_ = 0;
  std::vector<TriDiag> stiffness_;        // per harmonic
  std::vector<double> angular_factor_;    // 2pi / pi per harmonic (1 on interval)
  Eigen::MatrixXd cos_table_;             // collocation x harmonics
};

/// Probes both sides of a conjugate point at shrinking offsets; returns
/// the side with a decaying nontrivial branch, or nullopt (BranchNotFound).
std::optional<BranchSample> branch_probe(const NonlinearProblem& problem, const ConjugatePoint& cp,
                                         double neighbor_spacing, const ProbeParams& params);

/// Probes every conjugate point and the midpoints between consecutive
/// ones; checks the match tolerance, the no-spurious direction, and the
/// floor(M / max m) lower bound on distinct bifurcation points.
ScanFindings bifurcation_scan(const NonlinearProblem& problem,
                              const std::vector<ConjugatePoint>& crossings, int morse_full,
                              const ProbeParams& params);

}  // namespace starbif
