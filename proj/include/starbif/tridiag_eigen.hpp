// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Core>
#include <vector>

namespace starbif {

/// Eigenvalue kernel for symmetric tridiagonal matrices, by Sturm-count
/// bisection plus inverse iteration. This is the workhorse behind the
/// generalized pencil (K + W) u = mu B u with diagonal positive B: the
/// congruence B^{-1/2}(K+W)B^{-1/2} stays tridiagonal, so counting and
/// extraction are O(n) per evaluation.
namespace tridiag {

/// Number of eigenvalues strictly below x (LDL^T inertia count).
int count_below(const Eigen::VectorXd& diag, const Eigen::VectorXd& off, double x);

/// Gershgorin enclosure [lo, hi] of the full spectrum.
std::pair<double, double> spectrum_bounds(const Eigen::VectorXd& diag, const Eigen::VectorXd& off);

/// The k algebraically smallest eigenvalues, ascending, each bisected to
/// machine-level relative width.
std::vector<double> smallest_eigenvalues(const Eigen::VectorXd& diag, const Eigen::VectorXd& off,
                                         int k);

/// The j-th smallest eigenvalue (1-based), by bisection.
double eigenvalue_at(const Eigen::VectorXd& diag, const Eigen::VectorXd& off, int j);

/// Eigenvector for a converged eigenvalue via inverse iteration with a
/// deterministic start. `orthogonal_to` holds previously extracted
/// vectors of the same cluster (orthonormal); the iterate is reorthogonalized
/// against them so near-degenerate clusters come out orthonormal.
/// Returns a unit vector; residual_out gets ||T v - lambda v||.
Eigen::VectorXd eigenvector(const Eigen::VectorXd& diag, const Eigen::VectorXd& off, double lambda,
                            const std::vector<Eigen::VectorXd>& orthogonal_to,
                            double* residual_out);

}  // namespace tridiag
}  // namespace starbif
