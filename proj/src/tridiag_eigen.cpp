// SPDX-License-Identifier: Apache-2.0
#include "starbif/tridiag_eigen.hpp"

#include <cmath>
#include <random>

namespace starbif::tridiag {

namespace {
constexpr double kTinyPivot = 1e-300;
}

int count_below(const Eigen::VectorXd& diag, const Eigen::VectorXd& off, double x) {
  const int n = static_cast<int>(diag.size());
  int count = 0;
  double q = diag[0] - x;
  if (q < 0.0) ++count;
  for (int i = 1; i < n; ++i) {
    if (q == 0.0) q = -kTinyPivot;
    q = (diag[i] - x) - off[i - 1] * off[i - 1] / q;
    if (q < 0.0) ++count;
  }
  return count;
}

std::pair<double, double> spectrum_bounds(const Eigen::VectorXd& diag,
                                          const Eigen::VectorXd& off) {
  const int n = static_cast<int>(diag.size());
  double lo = diag[0], hi = diag[0];
  for (int i = 0; i < n; ++i) {
    double radius = 0.0;
    if (i > 0) radius += std::fabs(off[i - 1]);
    if (i + 1 < n) radius += std::fabs(off[i]);
    lo = std::min(lo, diag[i] - radius);
    hi = std::max(hi, diag[i] + radius);
  }
  return {lo, hi};
}

std::vector<double> smallest_eigenvalues(const Eigen::VectorXd& diag, const Eigen::VectorXd& off,
                                         int k) {
  const int n = static_cast<int>(diag.size());
  k = std::min(k, n);
  auto [lo, hi] = spectrum_bounds(diag, off);
  const double scale = std::max({std::fabs(lo), std::fabs(hi), 1.0});
  const double width_tol = 1e-15 * scale;
  std::vector<double> out(k);
  double floor_lo = lo;  // eigenvalues come out ascending; reuse the left edge
  for (int j = 1; j <= k; ++j) {
    double a = floor_lo, b = hi + width_tol;
    // invariant: count(a) < j <= count(b)
    for (int it = 0; it < 120 && (b - a) > width_tol; ++it) {
      const double m = 0.5 * (a + b);
      if (count_below(diag, off, m) >= j)
        b = m;
      else
        a = m;
    }
    out[j - 1] = 0.5 * (a + b);
    floor_lo = a;
  }
  return out;
}

double eigenvalue_at(const Eigen::VectorXd& diag, const Eigen::VectorXd& off, int j) {
  auto [lo, hi] = spectrum_bounds(diag, off);
  const double scale = std::max({std::fabs(lo), std::fabs(hi), 1.0});
  const double width_tol = 1e-15 * scale;
  double a = lo, b = hi + width_tol;
  for (int it = 0; it < 120 && (b - a) > width_tol; ++it) {
    const double m = 0.5 * (a + b);
    if (count_below(diag, off, m) >= j)
      b = m;
    else
      a = m;
  }
  return 0.5 * (a + b);
}

namespace {

// Solve (T - lambda I) z = rhs by LU with partial pivoting; the extra
// second superdiagonal absorbs the fill-in from row swaps.
Eigen::VectorXd shifted_solve(const Eigen::VectorXd& diag, const Eigen::VectorXd& off,
                              double lambda, Eigen::VectorXd rhs) {
  const int n = static_cast<int>(diag.size());
  Eigen::VectorXd d(n), u1(std::max(n - 1, 0)), u2(std::max(n - 2, 0));
  Eigen::VectorXd sub(std::max(n - 1, 0));
  for (int i = 0; i < n; ++i) d[i] = diag[i] - lambda;
  for (int i = 0; i < n - 1; ++i) {
    u1[i] = off[i];
    sub[i] = off[i];
  }
  u2.setZero();

  for (int i = 0; i < n - 1; ++i) {
    if (std::fabs(sub[i]) > std::fabs(d[i])) {
      std::swap(d[i], sub[i]);
      const double t = u1[i];
      u1[i] = d[i + 1];
      d[i + 1] = t;
      if (i + 2 < n) {
        u2[i] = u1[i + 1];
        u1[i + 1] = 0.0;
      }
      std::swap(rhs[i], rhs[i + 1]);
    }
    if (d[i] == 0.0) d[i] = kTinyPivot;
    const double m = sub[i] / d[i];
    d[i + 1] -= m * u1[i];
    if (i + 2 < n) u1[i + 1] -= m * u2[i];
    rhs[i + 1] -= m * rhs[i];
  }
  if (d[n - 1] == 0.0) d[n - 1] = kTinyPivot;

  Eigen::VectorXd z(n);
  for (int i = n - 1; i >= 0; --i) {
    double acc = rhs[i];
    if (i + 1 < n) acc -= u1[i] * z[i + 1];
    if (i + 2 < n) acc -= u2[i] * z[i + 2];
    z[i] = acc / d[i];
  }
  return z;
}

double apply_residual(const Eigen::VectorXd& diag, const Eigen::VectorXd& off, double lambda,
                      const Eigen::VectorXd& v) {
  const int n = static_cast<int>(diag.size());
  double acc = 0.0;
  for (int i = 0; i < n; ++i) {
    double r = (diag[i] - lambda) * v[i];
    if (i > 0) r += off[i - 1] * v[i - 1];
    if (i + 1 < n) r += off[i] * v[i + 1];
    acc += r * r;
  }
  return std::sqrt(acc);
}

void orthogonalize(Eigen::VectorXd& v, const std::vector<Eigen::VectorXd>& basis) {
  for (int pass = 0; pass < 2; ++pass)
    for (const auto& b : basis) v -= b.dot(v) * b;
}

}  // namespace

Eigen::VectorXd eigenvector(const Eigen::VectorXd& diag, const Eigen::VectorXd& off, double lambda,
                            const std::vector<Eigen::VectorXd>& orthogonal_to,
                            double* residual_out) {
  const int n = static_cast<int>(diag.size());
  std::mt19937 rng(0x5bd1e995u + static_cast<unsigned>(n));
  std::uniform_real_distribution<double> dist(-1.0, 1.0);

  Eigen::VectorXd best;
  double best_res = std::numeric_limits<double>::infinity();
  for (int attempt = 0; attempt < 3; ++attempt) {
    Eigen::VectorXd v(n);
    for (int i = 0; i < n; ++i) v[i] = dist(rng);
    orthogonalize(v, orthogonal_to);
    v.normalize();
    for (int it = 0; it < 4 + 2 * attempt; ++it) {
      v = shifted_solve(diag, off, lambda, v);
      orthogonalize(v, orthogonal_to);
      const double norm = v.norm();
      if (!(norm > 0.0) || !std::isfinite(norm)) break;
      v /= norm;
    }
    if (!v.allFinite()) continue;
    const double res = apply_residual(diag, off, lambda, v);
    if (res < best_res) {
      best_res = res;
      best = v;
    }
    // tridiagonal inverse iteration converges in one or two sweeps;
    // anything below sqrt(eps)*scale is already far better than needed
    if (best_res <= 1e-11 * (std::fabs(lambda) + 1.0)) break;
  }
  if (residual_out) *residual_out = best_res;
  return best;
}

}  // namespace starbif::tridiag
