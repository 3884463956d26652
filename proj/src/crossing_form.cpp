// SPDX-License-Identifier: Apache-2.0
#include "starbif/crossing_form.hpp"

#include <Eigen/Dense>
#include <cmath>

namespace starbif {

namespace {

// polarization weight of node j: d/ds|_{s=r} (s^2 f(s x_j))
double form_derivative_weight(const PotentialField& f, double r, double s) {
  return 2.0 * r * f(r * s) + r * r * f.derivative(r * s) * s;
}

bool same_channel(const KernelVector& a, const KernelVector& b) {
  return a.block == b.block && a.angular == b.angular;
}

// one-sided second-order normal derivative with the homogeneous
// boundary value: d_n u = (u[inner2] - 4 u[inner1]) / (2h)
double normal_derivative(const Grid& g, const BoundaryStencil& st, const Eigen::VectorXd& u) {
  return (u[st.inner2] - 4.0 * u[st.inner1]) / (2.0 * g.h);
}

}  // namespace

Eigen::MatrixXd crossing_form_volume(const Grid& g, const PotentialField& f, double r,
                                     const std::vector<KernelVector>& kernel) {
  const int m = static_cast<int>(kernel.size());
  Eigen::VectorXd cw(g.n);
  for (int j = 0; j < g.n; ++j) cw[j] = form_derivative_weight(f, r, g.nodes[j]);

  Eigen::MatrixXd gamma = Eigen::MatrixXd::Zero(m, m);
  for (int i = 0; i < m; ++i) {
    for (int j = i; j < m; ++j) {
      if (!same_channel(kernel[i], kernel[j])) continue;  // angular orthogonality
      const double alpha = g.modes[kernel[i].block].angular_factor;
      double acc = 0.0;
      for (int t = 0; t < g.n; ++t)
        acc += g.base_weights[t] * cw[t] * kernel[i].radial[t] * kernel[j].radial[t];
      gamma(i, j) = gamma(j, i) = alpha * acc;
    }
  }
  return gamma;
}

Eigen::MatrixXd crossing_form_boundary(const Grid& g, const BoundarySample& bs, double r,
                                       const std::vector<KernelVector>& kernel) {
  const int m = static_cast<int>(kernel.size());
  Eigen::MatrixXd gamma = Eigen::MatrixXd::Zero(m, m);

  if (g.domain.kind == DomainKind::Interval) {
    // two endpoint samples, support <x,n> from the sample itself
    std::vector<std::array<double, 2>> dn(m);
    for (int i = 0; i < m; ++i)
      for (int b = 0; b < 2; ++b)
        dn[i][b] = normal_derivative(g, g.boundary_adjacency[b], kernel[i].radial);
    for (int i = 0; i < m; ++i)
      for (int j = i; j < m; ++j) {
        double acc = 0.0;
        for (int b = 0; b < 2; ++b)
          acc += bs.weights[b] * dn[i][b] * dn[j][b] * bs.support_values[b];
        gamma(i, j) = gamma(j, i) = -acc / r;
      }
    return gamma;
  }

  // disk: d_n u = v'(R) x angular profile; the angular integral of
  // cos^2/sin^2 is the block's angular factor, cross terms vanish
  const double R = g.domain.radius;
  const double support = bs.support_values.empty() ? R : bs.support_values.front();
  std::vector<double> dv(m);
  for (int i = 0; i < m; ++i)
    dv[i] = normal_derivative(g, g.boundary_adjacency[0], kernel[i].radial);
  for (int i = 0; i < m; ++i)
    for (int j = i; j < m; ++j) {
      if (!same_channel(kernel[i], kernel[j])) continue;
      const double alpha = g.modes[kernel[i].block].angular_factor;
      gamma(i, j) = gamma(j, i) = -(alpha * R * support / r) * dv[i] * dv[j];
    }
  return gamma;
}

std::array<int, 3> signature(const Eigen::MatrixXd& gamma, double tol_sig) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gamma, Eigen::EigenvaluesOnly);
  std::array<int, 3> sig{0, 0, 0};
  for (int i = 0; i < es.eigenvalues().size(); ++i) {
    const double lam = es.eigenvalues()[i];
    if (lam > tol_sig)
      ++sig[0];
    else if (lam < -tol_sig)
      ++sig[1];
    else
      ++sig[2];
  }
  return sig;
}

double default_tol_sig(const Eigen::MatrixXd& gamma) {
  return 1e-4 * gamma.cwiseAbs().maxCoeff() + 1e-12;
}

double finite_difference_check(const Grid& g, const OperatorTriple& ops, const PotentialField& f,
                               double r, const KernelVector& u, double delta) {
  if (!(delta > 0.0 && delta < std::min(r, 1.0 - r)))
    throw ConfigError("finite-difference step must satisfy 0 < delta < min(r, 1-r)");
  const Eigen::MatrixXd gv = crossing_form_volume(g, f, r, {u});
  const double plus = evaluate_hessian_form(g, ops, f, r + delta, u.block, u.radial);
  const double minus = evaluate_hessian_form(g, ops, f, r - delta, u.block, u.radial);
  return std::fabs(gv(0, 0) - (plus - minus) / (2.0 * delta));
}

CrossingFormResult evaluate_crossing_forms(const Grid& g, const OperatorTriple& ops,
                                           const BoundarySample& bs, const PotentialField& f,
                                           ConjugatePoint& cp, double fd_delta) {
  CrossingFormResult res;
  res.gamma_volume = crossing_form_volume(g, f, cp.r_star, cp.kernel);
  res.gamma_boundary = crossing_form_boundary(g, bs, cp.r_star, cp.kernel);
  const double vnorm = res.gamma_volume.norm();
  res.relative_discrepancy =
      vnorm > 0.0 ? (res.gamma_volume - res.gamma_boundary).norm() / vnorm
                  : res.gamma_boundary.norm();
  res.tol_sig = default_tol_sig(res.gamma_volume);
  const auto sig = signature(res.gamma_volume, res.tol_sig);
  res.n_plus = sig[0];
  res.n_minus = sig[1];
  res.n_zero = sig[2];

  const double delta = std::min(fd_delta, 0.5 * std::min(cp.r_star, 1.0 - cp.r_star));
  double worst = 0.0;
  for (const KernelVector& kv : cp.kernel)
    worst = std::max(worst, finite_difference_check(g, ops, f, cp.r_star, kv, delta));
  res.fd_check_error = worst;

  cp.gamma = res.gamma_volume;
  cp.n_plus = res.n_plus;
  cp.n_minus = res.n_minus;
  cp.n_zero = res.n_zero;
  cp.regular = (res.n_zero == 0);
  cp.boundary_rel_err = res.relative_discrepancy;
  cp.fd_check_error = res.fd_check_error;
  return res;
}

double rescaling_derivative_residual(const Grid& g, const PotentialField& f, double r,
                                     const KernelVector& u) {
  if (g.domain.kind != DomainKind::Interval)
    throw ConfigError("the rescaling-derivative diagnostic is defined for interval runs");
  const int n = g.n;
  const double h = g.h;
  const Eigen::VectorXd& v = u.radial;

  // udot = <grad u, x> / r with centered differences; the homogeneous
  // boundary value closes the stencil at both ends
  Eigen::VectorXd udot(n);
  for (int i = 0; i < n; ++i) {
    const double left = i > 0 ? v[i - 1] : 0.0;
    const double right = i + 1 < n ? v[i + 1] : 0.0;
    udot[i] = g.nodes[i] * (right - left) / (2.0 * h) / r;
  }

  double worst = 0.0;
  for (int i = 2; i + 2 < n; ++i) {
    const double lap = (udot[i + 1] - 2.0 * udot[i] + udot[i - 1]) / (h * h);
    const double c = form_derivative_weight(f, r, g.nodes[i]);
    const double resid = -lap + c * v[i] + r * r * f(r * g.nodes[i]) * udot[i];
    worst = std::max(worst, std::fabs(resid));
  }
  return worst;
}

}  // namespace starbif
