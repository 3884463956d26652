// SPDX-License-Identifier: Apache-2.0
//
// Test-only closed-form references, independent of the library code:
// Bessel zeros by bracketing the standard-library Bessel function, and
// Dirichlet eigenvalues of the 1D Laplacian (continuum and discrete).
#pragma once

#include <cmath>
#include <stdexcept>

namespace oracles {

// m-th positive zero of J_nu, via sign-change bracketing + bisection.
inline double bessel_zero(int nu, int m) {
  auto j = [nu](double x) { return std::cyl_bessel_j(static_cast<double>(nu), x); };
  const double step = 0.05;
  double x = nu + 0.1;
  double prev = j(x);
  int found = 0;
  for (int it = 0; it < 200000; ++it) {
    const double xn = x + step;
    const double cur = j(xn);
    if (prev == 0.0) ++found;
    if (prev * cur < 0.0) {
      ++found;
      if (found == m) {
        double a = x, b = xn, fa = prev;
        for (int k = 0; k < 200; ++k) {
          const double mid = 0.5 * (a + b);
          const double fm = j(mid);
          if (fa * fm <= 0.0)
            b = mid;
          else {
            a = mid;
            fa = fm;
          }
        }
        return 0.5 * (a + b);
      }
    }
    x = xn;
    prev = cur;
  }
  throw std::runtime_error("bessel zero bracketing failed");
}

// continuum Dirichlet eigenvalue on (a, b): (k pi / (b - a))^2
inline double interval_eigenvalue(int k, double a, double b) {
  const double L = b - a;
  const double kpl = k * M_PI / L;
  return kpl * kpl;
}

// exact eigenvalue of the discrete 3-point Dirichlet Laplacian with n
// interior nodes: (4/h^2) sin^2(k pi / (2(n+1)))
inline double interval_discrete_eigenvalue(int k, double a, double b, int n) {
  const double h = (b - a) / (n + 1);
  const double s = std::sin(0.5 * k * M_PI / (n + 1));
  return 4.0 * s * s / (h * h);
}

}  // namespace oracles
