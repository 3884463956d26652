// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Core>
#include <vector>

#include "starbif/geometry.hpp"

namespace starbif {

/// One angular block of the discretization. The interval is a single
/// block (mode 0, factor 1). The disk decomposes into Fourier modes
/// nu = 0..nu_max; each mode nu >= 1 stands for the two-dimensional
/// {cos, sin} eigenspace (degeneracy 2), and the angular factor is the
/// integral of the squared angular profile (2 pi for nu = 0, pi else).
struct ModeBlock {
  int nu = 0;
  double angular_factor = 1.0;
  int degeneracy = 1;
};

/// Stencil anchors for one-sided normal-derivative extraction at one
/// boundary sample point: inner1 at distance h inward, inner2 at 2h.
/// With the homogeneous Dirichlet boundary value, the second-order
/// one-sided difference is d_n u = (u[inner2] - 4 u[inner1]) / (2h).
struct BoundaryStencil {
  int inner1 = 0;
  int inner2 = 0;
};

/// Tensorized 1D grid on the fixed domain. Interval: uniform interior
/// nodes x_i = a + i h, h = (b-a)/(n+1). Disk: radial nodes rho_j = j h,
/// h = R/(n+1), shared by all Fourier modes.
struct Grid {
  Domain domain;
  int n = 0;                       // interior nodes per direction
  double h = 0.0;
  Eigen::VectorXd nodes;           // x_i or rho_j, size n
  Eigen::VectorXd base_weights;    // h (interval) or rho_j h (disk), size n
  std::vector<ModeBlock> modes;
  std::vector<BoundaryStencil> boundary_adjacency;  // aligned with boundary_sample order

  int node_count() const { return n; }
  /// <x, x> at node i equals nodes[i]^2 in both parametrizations.
  double coordinate(int i) const { return nodes[i]; }
  /// Quadrature weight of node j in block b (angular factor included).
  double weight(int block, int j) const { return modes[block].angular_factor * base_weights[j]; }
  /// Total degrees of freedom summed over blocks.
  int total_dofs() const { return n * static_cast<int>(modes.size()); }
};

/// Builds the grid. Requires n >= 8. nu_max is ignored for intervals.
Grid build_grid(const Domain& d, int n, int nu_max = 12);

}  // namespace starbif
