// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Core>
#include <array>
#include <vector>

#include "starbif/geometry.hpp"
#include "starbif/sweep.hpp"

namespace starbif {

/// Both evaluations of the crossing form on a kernel basis, their
/// mutual discrepancy, and the signature of the primary (volume) matrix.
struct CrossingFormResult {
  Eigen::MatrixXd gamma_volume;
  Eigen::MatrixXd gamma_boundary;
  double relative_discrepancy = 0.0;  // ||Gv - Gb||_F / ||Gv||_F
  int n_plus = 0, n_minus = 0, n_zero = 0;
  double tol_sig = 0.0;
  double fd_check_error = 0.0;  // worst deviation of the derivative probe over the basis
};

/// Volume route (the definition): Gamma_ij = sum_nodes w (2 r f(r x) +
/// r^2 f'(r x) x) u_i u_j, the polarization of d/ds|_{s=r} of the form.
Eigen::MatrixXd crossing_form_volume(const Grid& g, const PotentialField& f, double r,
                                     const std::vector<KernelVector>& kernel);

/// Boundary route: Gamma_ij = -(1/r) sum_boundary w (d_n u_i)(d_n u_j)
/// <x, n>, with the normal derivative extracted by the second-order
/// one-sided stencil and disk angular integrals done exactly.
Eigen::MatrixXd crossing_form_boundary(const Grid& g, const BoundarySample& bs, double r,
                                       const std::vector<KernelVector>& kernel);

/// (n_plus, n_minus, n_zero) at tolerance tol_sig; sgn = n_plus - n_minus.
std::array<int, 3> signature(const Eigen::MatrixXd& gamma, double tol_sig);

/// Default: 1e-4 * max |Gamma_ij| + 1e-12.
double default_tol_sig(const Eigen::MatrixXd& gamma);

/// |Gamma_volume[u] - (h_{r+delta}(u) - h_{r-delta}(u)) / (2 delta)|.
/// Exact up to roundoff for constant f (the form is quadratic in r).
double finite_difference_check(const Grid& g, const OperatorTriple& ops, const PotentialField& f,
                               double r, const KernelVector& u, double delta);

/// Runs both routes, the signature, and the derivative probe; fills the
/// ConjugatePoint in place and returns the detailed result.
CrossingFormResult evaluate_crossing_forms(const Grid& g, const OperatorTriple& ops,
                                           const BoundarySample& bs, const PotentialField& f,
                                           ConjugatePoint& cp, double fd_delta = 1e-3);

/// Residual of the differentiated rescaled equation on the scaling
/// derivative field udot = <grad u, x>/r (diagnostic; O(h) in the
/// discrete max norm on the interval).
double rescaling_derivative_residual(const Grid& g, const PotentialField& f, double r,
                                     const KernelVector& u);

}  // namespace starbif
