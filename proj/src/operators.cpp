// SPDX-License-Identifier: Apache-2.0
#include "starbif/operators.hpp"

#include <cmath>
#include <sstream>

namespace starbif {

Eigen::VectorXd TriDiag::apply(const Eigen::VectorXd& x) const {
  const int n = size();
  Eigen::VectorXd y(n);
  for (int i = 0; i < n; ++i) {
    double acc = diag[i] * x[i];
    if (i > 0) acc += off[i - 1] * x[i - 1];
    if (i + 1 < n) acc += off[i] * x[i + 1];
    y[i] = acc;
  }
  return y;
}

double TriDiag::bilinear(const Eigen::VectorXd& u, const Eigen::VectorXd& v) const {
  const int n = size();
  double acc = 0.0;
  for (int i = 0; i < n; ++i) {
    acc += u[i] * diag[i] * v[i];
    if (i + 1 < n) acc += off[i] * (u[i] * v[i + 1] + u[i + 1] * v[i]);
  }
  return acc;
}

double TriDiag::norm_inf() const {
  const int n = size();
  double best = 0.0;
  for (int i = 0; i < n; ++i) {
    double row = std::fabs(diag[i]);
    if (i > 0) row += std::fabs(off[i - 1]);
    if (i + 1 < n) row += std::fabs(off[i]);
    best = std::max(best, row);
  }
  return best;
}

// Interval: K = (1/h) tridiag(-1, 2, -1) so u^T K u = sum (du)^2 / h.
// Disk mode nu: conservative radial form with face coefficients
// rho_{j+-1/2}/h plus the centrifugal term nu^2 h / rho_j, scaled by the
// angular factor. nu = 0 closes the center with zero flux through the
// rho = h/2 face (the reflection condition on this node layout); nu >= 1
// couples to the homogeneous value at rho = 0.
TriDiag mode_stiffness(const Grid& g, const ModeBlock& mode) {
  const int n = g.n;
  const double h = g.h;
  TriDiag K;
  K.diag.resize(n);
  K.off.resize(n - 1);
  if (g.domain.kind == DomainKind::Interval) {
    K.diag.setConstant(2.0 / h);
    K.off.setConstant(-1.0 / h);
    return K;
  }
  const double alpha = mode.angular_factor;
  const double nu2 = static_cast<double>(mode.nu) * mode.nu;
  for (int j = 0; j < n; ++j) {
    const double rho = g.nodes[j];
    const double face_lo = rho - 0.5 * h;
    const double face_hi = rho + 0.5 * h;
    double kd = face_hi / h + nu2 * h / rho;
    if (j > 0 || mode.nu >= 1) kd += face_lo / h;
    K.diag[j] = alpha * kd;
    if (j + 1 < n) K.off[j] = -alpha * face_hi / h;
  }
  return K;
}

OperatorTriple assemble_stiffness(const Grid& g) {
  OperatorTriple ops;
  ops.blocks.reserve(g.modes.size());
  for (const ModeBlock& mode : g.modes) {
    OperatorBlock blk;
    blk.mode = mode;
    blk.K = mode_stiffness(g, mode);
    blk.B = mode.angular_factor * g.base_weights;
    ops.blocks.push_back(std::move(blk));
  }
  return ops;
}

Eigen::VectorXd potential_profile(const Grid& g, const PotentialField& f, double r) {
  Eigen::VectorXd prof(g.n);
  const double r2 = r * r;
  for (int j = 0; j < g.n; ++j) {
    const double value = f(r * g.nodes[j]);
    if (!std::isfinite(value)) {
      std::ostringstream msg;
      msg << "potential evaluation failed at node " << j << " (coordinate "
          << r * g.nodes[j] << "): value " << value;
      throw NumericalFailure(msg.str());
    }
    prof[j] = r2 * value;
  }
  return prof;
}

PotentialDiag assemble_potential(const Grid& g, const PotentialField& f, double r) {
  if (!(r >= 0.0 && r <= 1.0)) throw ConfigError("shrink parameter r must lie in [0, 1]");
  PotentialDiag W;
  W.r = r;
  const Eigen::VectorXd prof = potential_profile(g, f, r);
  W.blocks.reserve(g.modes.size());
  for (const ModeBlock& mode : g.modes)
    W.blocks.push_back(mode.angular_factor * g.base_weights.cwiseProduct(prof));
  return W;
}

double evaluate_hessian_form(const Grid& g, const OperatorTriple& ops, const PotentialField& f,
                             double r, int block, const Eigen::VectorXd& u) {
  const OperatorBlock& blk = ops.blocks.at(block);
  const Eigen::VectorXd prof = potential_profile(g, f, r);
  double acc = blk.K.bilinear(u, u);
  for (int j = 0; j < g.n; ++j)
    acc += blk.mode.angular_factor * g.base_weights[j] * prof[j] * u[j] * u[j];
  return acc;
}

double evaluate_energy(const Grid& g, const OperatorTriple& ops, const NonlinearitySpec& gs,
                       double r, int block, const Eigen::VectorXd& u) {
  const OperatorBlock& blk = ops.blocks.at(block);
  double acc = 0.5 * blk.K.bilinear(u, u);
  const double r2 = r * r;
  for (int j = 0; j < g.n; ++j) {
    const double w = blk.mode.angular_factor * g.base_weights[j];
    acc += r2 * w * gs.primitive(r * g.nodes[j], u[j]);
  }
  return acc;
}

}  // namespace starbif
