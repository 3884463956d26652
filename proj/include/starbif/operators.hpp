// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Core>
#include <vector>

#include "starbif/grid.hpp"
#include "starbif/nonlinearity.hpp"
#include "starbif/potential.hpp"

namespace starbif {

/// Symmetric tridiagonal matrix, stored by diagonals.
struct TriDiag {
  Eigen::VectorXd diag;
  Eigen::VectorXd off;  // size diag.size() - 1

  int size() const { return static_cast<int>(diag.size()); }
  Eigen::VectorXd apply(const Eigen::VectorXd& x) const;
  /// u^T A v.
  double bilinear(const Eigen::VectorXd& u, const Eigen::VectorXd& v) const;
  /// max row sum (infinity norm).
  double norm_inf() const;
};

/// Stiffness and mass for one angular block, energy-scaled so that
/// u^T K u approximates the Dirichlet energy of the represented function
/// and u^T B u its squared L2 norm (angular factors included).
struct OperatorBlock {
  ModeBlock mode;
  TriDiag K;            // SPD
  Eigen::VectorXd B;    // diagonal, positive
};

/// K and B assembled once per grid; W(r) varies along the sweep.
struct OperatorTriple {
  std::vector<OperatorBlock> blocks;
  int block_count() const { return static_cast<int>(blocks.size()); }
};

/// Diagonal potential matrix W(r), one diagonal per block:
/// W_b[j] = r^2 f(r x_j) * weight(b, j). W(0) is the zero matrix.
struct PotentialDiag {
  double r = 0.0;
  std::vector<Eigen::VectorXd> blocks;
};

/// Dirichlet energy matrix of a single angular block (u^T K u ~ the
/// Dirichlet integral of the represented function, angular factor
/// included). The interval ignores the mode.
TriDiag mode_stiffness(const Grid& g, const ModeBlock& mode);

OperatorTriple assemble_stiffness(const Grid& g);

/// Nodewise factor r^2 f(r x_j), shared by every block.
Eigen::VectorXd potential_profile(const Grid& g, const PotentialField& f, double r);

PotentialDiag assemble_potential(const Grid& g, const PotentialField& f, double r);

/// u^T (K_b + W_b(r)) u for a state u on block `block`.
double evaluate_hessian_form(const Grid& g, const OperatorTriple& ops, const PotentialField& f,
                             double r, int block, const Eigen::VectorXd& u);

/// Discrete functional for a nodal state on block `block`:
/// u^T K u / 2 + r^2 sum_j w_j G(r x_j, u_j). Quadratic nonlinearities
/// reduce it to evaluate_hessian_form / 2 exactly.
double evaluate_energy(const Grid& g, const OperatorTriple& ops, const NonlinearitySpec& gs,
                       double r, int block, const Eigen::VectorXd& u);

}  // namespace starbif
