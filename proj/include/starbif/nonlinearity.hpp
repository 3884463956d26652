// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "starbif/potential.hpp"

namespace starbif {

/// Polynomial nonlinearity g(x, xi) = f(x) xi + q(x) xi^2 + kappa(x) xi^3
/// with primitive G(x, t) = f t^2/2 + q t^3/3 + kappa t^4/4.
/// g(x, 0) = 0 structurally and dg/dxi(x, 0) = f(x) exactly, so the
/// linearization used by the spectral sweep matches by construction.
struct NonlinearitySpec {
  PotentialField f;      // linear part, shared with the sweep
  PotentialField q;      // quadratic coefficient (optional, default 0)
  PotentialField kappa;  // cubic coefficient (optional, default 0)

  double g(double s, double xi) const {
    return (f(s) + (q(s) + kappa(s) * xi) * xi) * xi;
  }
  double dg_dxi(double s, double xi) const {
    return f(s) + (2.0 * q(s) + 3.0 * kappa(s) * xi) * xi;
  }
  double primitive(double s, double t) const {
    const double t2 = t * t;
    return 0.5 * f(s) * t2 + (q(s) / 3.0) * t2 * t + 0.25 * kappa(s) * t2 * t2;
  }
  bool is_linear() const {
    return q.is_constant() && q.constant_value() == 0.0 && kappa.is_constant() &&
           kappa.constant_value() == 0.0;
  }
  /// Odd in xi (no quadratic term): u -> -u maps solutions to solutions.
  bool is_odd() const { return q.is_constant() && q.constant_value() == 0.0; }
};

}  // namespace starbif
