// SPDX-License-Identifier: Apache-2.0
#include "starbif/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "starbif/tridiag_eigen.hpp"

namespace starbif {

namespace {

// Congruence to a standard symmetric tridiagonal problem: with positive
// diagonal B, B^{-1/2}(K+W)B^{-1/2} has the same eigenvalues as the
// pencil and eigenvectors v = B^{1/2} u.
struct Symmetrized {
  Eigen::VectorXd diag;
  Eigen::VectorXd off;
};

Symmetrized symmetrize(const OperatorBlock& blk, const Eigen::VectorXd& Wb) {
  const int n = blk.K.size();
  Symmetrized s;
  s.diag.resize(n);
  s.off.resize(n - 1);
  for (int i = 0; i < n; ++i) s.diag[i] = (blk.K.diag[i] + Wb[i]) / blk.B[i];
  for (int i = 0; i < n - 1; ++i)
    s.off[i] = blk.K.off[i] / std::sqrt(blk.B[i] * blk.B[i + 1]);
  return s;
}

Eigen::VectorXd to_pencil_vector(const OperatorBlock& blk, const Eigen::VectorXd& v) {
  Eigen::VectorXd u = v.cwiseQuotient(blk.B.cwiseSqrt());
  // canonical sign: largest-magnitude component positive
  int imax = 0;
  u.cwiseAbs().maxCoeff(&imax);
  if (u[imax] < 0.0) u = -u;
  // exact B-normalization (v is unit, so this is a no-op up to roundoff)
  double bnorm = 0.0;
  for (int i = 0; i < u.size(); ++i) bnorm += u[i] * blk.B[i] * u[i];
  u /= std::sqrt(bnorm);
  return u;
}

double pencil_residual(const OperatorBlock& blk, const Eigen::VectorXd& Wb, double mu,
                       const Eigen::VectorXd& u) {
  Eigen::VectorXd res = blk.K.apply(u);
  res += Wb.cwiseProduct(u);
  res -= mu * blk.B.cwiseProduct(u);
  return res.norm();
}

double pencil_norm(const OperatorBlock& blk, const Eigen::VectorXd& Wb) {
  double norm = blk.K.norm_inf();
  for (int i = 0; i < Wb.size(); ++i) norm = std::max(norm, std::fabs(Wb[i]));
  return norm;
}

}  // namespace

int negative_count(const OperatorTriple& ops, const PotentialDiag& W, double threshold) {
  int total = 0;
  for (int b = 0; b < ops.block_count(); ++b) {
    const Symmetrized s = symmetrize(ops.blocks[b], W.blocks[b]);
    total += ops.blocks[b].mode.degeneracy * tridiag::count_below(s.diag, s.off, threshold);
  }
  return total;
}

std::vector<EigenPair> lowest_eigenpairs(const OperatorTriple& ops, const PotentialDiag& W,
                                         int k) {
  struct Candidate {
    double mu;
    int block;
    int pos;  // 1-based position within its block
  };
  std::vector<Candidate> cands;
  std::vector<Symmetrized> sym(ops.block_count());
  for (int b = 0; b < ops.block_count(); ++b) {
    sym[b] = symmetrize(ops.blocks[b], W.blocks[b]);
    const int kb = std::min(k, ops.blocks[b].K.size());
    const auto eigs = tridiag::smallest_eigenvalues(sym[b].diag, sym[b].off, kb);
    for (int j = 0; j < static_cast<int>(eigs.size()); ++j)
      cands.push_back({eigs[j], b, j + 1});
  }
  std::sort(cands.begin(), cands.end(), [](const Candidate& a, const Candidate& b) {
    return a.mu != b.mu ? a.mu < b.mu : a.block < b.block;
  });

  std::vector<EigenPair> pairs;
  // cluster bookkeeping per block for inverse-iteration orthogonalization
  std::vector<std::vector<Eigen::VectorXd>> extracted_std(ops.block_count());
  std::vector<std::vector<double>> extracted_mu(ops.block_count());

  int dims = 0;
  for (const Candidate& c : cands) {
    if (dims >= k) break;
    const OperatorBlock& blk = ops.blocks[c.block];
    const Symmetrized& s = sym[c.block];
    // orthogonalize only against neighbors closer than the cluster gap
    const double gap = 1e-9 * (std::fabs(c.mu) + 1.0);
    std::vector<Eigen::VectorXd> near;
    for (std::size_t i = 0; i < extracted_mu[c.block].size(); ++i)
      if (std::fabs(extracted_mu[c.block][i] - c.mu) < gap)
        near.push_back(extracted_std[c.block][i]);
    double vres = 0.0;
    Eigen::VectorXd v = tridiag::eigenvector(s.diag, s.off, c.mu, near, &vres);
    if (v.size() == 0) {
      std::ostringstream msg;
      msg << "inverse iteration failed at r = " << W.r << ", mode " << blk.mode.nu
          << ", eigenvalue " << c.mu;
      throw NumericalFailure(msg.str());
    }
    extracted_std[c.block].push_back(v);
    extracted_mu[c.block].push_back(c.mu);

    EigenPair pair;
    pair.mu = c.mu;
    pair.block = c.block;
    pair.degeneracy = blk.mode.degeneracy;
    pair.vec = to_pencil_vector(blk, v);
    pair.residual = pencil_residual(blk, W.blocks[c.block], c.mu, pair.vec);
    const double allowed = 1e-8 * pencil_norm(blk, W.blocks[c.block]);
    if (pair.residual > allowed) {
      std::ostringstream msg;
      msg << "eigenpair residual " << pair.residual << " exceeds " << allowed << " at r = " << W.r
          << ", mode " << blk.mode.nu;
      throw NumericalFailure(msg.str());
    }
    pair.index = static_cast<int>(pairs.size());
    pairs.push_back(std::move(pair));
    dims += blk.mode.degeneracy;
  }
  return pairs;
}

SpectrumSlice compute_slice(const OperatorTriple& ops, const PotentialDiag& W, double r, int k,
                            double tol_zero) {
  SpectrumSlice slice;
  slice.r = r;
  slice.tol_zero = tol_zero;
  slice.negative_count = negative_count(ops, W, -tol_zero);
  const double upper = std::nextafter(tol_zero, std::numeric_limits<double>::infinity());
  slice.indeterminate = negative_count(ops, W, upper) > slice.negative_count;

  int total_dims = 0;
  for (const auto& blk : ops.blocks) total_dims += blk.mode.degeneracy * blk.K.size();
  int k_try = std::min(k, total_dims);
  while (true) {
    slice.pairs = lowest_eigenpairs(ops, W, k_try);
    const double top = slice.pairs.empty() ? 0.0 : slice.pairs.back().mu;
    if (top > tol_zero || k_try >= total_dims) break;
    k_try = std::min(2 * k_try, total_dims);
  }
  return slice;
}

int morse_index(const SpectrumSlice& slice) {
  if (slice.indeterminate) {
    std::ostringstream msg;
    msg << "Morse index indeterminate at r = " << slice.r << ": an eigenvalue lies within "
        << slice.tol_zero << " of zero";
    throw IndeterminateIndex(msg.str());
  }
  return slice.negative_count;
}

std::vector<KernelVector> kernel_basis(const OperatorTriple& ops, const PotentialDiag& W,
                                       double tol_kernel) {
  std::vector<KernelVector> basis;
  const double upper = std::nextafter(tol_kernel, std::numeric_limits<double>::infinity());
  for (int b = 0; b < ops.block_count(); ++b) {
    const OperatorBlock& blk = ops.blocks[b];
    const Symmetrized s = symmetrize(blk, W.blocks[b]);
    const int below = tridiag::count_below(s.diag, s.off, -tol_kernel);
    const int upto = tridiag::count_below(s.diag, s.off, upper);
    std::vector<Eigen::VectorXd> cluster_std;
    for (int j = below + 1; j <= upto; ++j) {
      const double mu = tridiag::eigenvalue_at(s.diag, s.off, j);
      double vres = 0.0;
      Eigen::VectorXd v = tridiag::eigenvector(s.diag, s.off, mu, cluster_std, &vres);
      if (v.size() == 0) throw NumericalFailure("kernel eigenvector extraction failed");
      cluster_std.push_back(v);
      const Eigen::VectorXd u = to_pencil_vector(blk, v);
      if (blk.mode.degeneracy == 2) {
        basis.push_back(KernelVector{b, blk.mode.nu, AngularKind::Cos, u});
        basis.push_back(KernelVector{b, blk.mode.nu, AngularKind::Sin, u});
      } else {
        basis.push_back(KernelVector{
            b, blk.mode.nu,
            blk.mode.nu == 0 && ops.block_count() > 1 ? AngularKind::Axial : AngularKind::None,
            u});
      }
    }
  }
  if (basis.empty())
    throw EmptyKernel("no eigenvalue within the kernel tolerance; refinement failed");
  return basis;
}

}  // namespace starbif
