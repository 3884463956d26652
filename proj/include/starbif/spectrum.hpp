// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Core>
#include <vector>

#include "starbif/operators.hpp"

namespace starbif {

/// One generalized eigenpair (K_b + W_b) u = mu B_b u on block `block`,
/// B-normalized (u^T B u = 1). `degeneracy` is 2 on disk modes nu >= 1,
/// where the pair stands for both cos and sin angular profiles.
struct EigenPair {
  double mu = 0.0;
  int block = 0;
  int degeneracy = 1;
  Eigen::VectorXd vec;
  double residual = 0.0;  // ||(K+W)u - mu B u||, unscaled
  int index = 0;          // position in merged ascending order
};

/// Spectral snapshot at one shrink parameter r.
struct SpectrumSlice {
  double r = 0.0;
  std::vector<EigenPair> pairs;  // ascending by mu; degeneracy-weighted count >= k
  int negative_count = 0;        // #{mu < -tol_zero}, multiplicities included
  bool indeterminate = false;    // some |mu| <= tol_zero
  double tol_zero = 0.0;
};

/// Angular profile of a kernel vector: none on the interval, cos/sin on
/// disk modes nu >= 1 (axial means the rotationally symmetric nu = 0).
enum class AngularKind { None, Axial, Cos, Sin };

struct KernelVector {
  int block = 0;
  int nu = 0;
  AngularKind angular = AngularKind::None;
  Eigen::VectorXd radial;  // B-normalized on its block
};

/// The k smallest generalized eigenpairs of the pencil, merged across
/// blocks in ascending order; degeneracies count toward k. Residuals are
/// verified against 1e-8 * ||K+W||_inf and NumericalFailure is raised
/// with (r, mode) context if inverse iteration cannot reach that.
std::vector<EigenPair> lowest_eigenpairs(const OperatorTriple& ops, const PotentialDiag& W, int k);

/// Degeneracy-weighted count of eigenvalues below `threshold` across all
/// blocks, by Sturm counts only (no eigenvector work).
int negative_count(const OperatorTriple& ops, const PotentialDiag& W, double threshold);

/// Full slice with indeterminacy detection; k escalates internally until
/// the largest retrieved eigenvalue clears +tol_zero.
SpectrumSlice compute_slice(const OperatorTriple& ops, const PotentialDiag& W, double r, int k,
                            double tol_zero);

/// Morse index of the slice. Throws IndeterminateIndex if some
/// |mu| <= tol_zero.
int morse_index(const SpectrumSlice& slice);

/// B-orthonormal basis of the near-null cluster {|mu| <= tol_kernel};
/// disk modes nu >= 1 contribute a cos and a sin copy. Throws EmptyKernel
/// if the cluster is empty.
std::vector<KernelVector> kernel_basis(const OperatorTriple& ops, const PotentialDiag& W,
                                       double tol_kernel);

}  // namespace starbif
