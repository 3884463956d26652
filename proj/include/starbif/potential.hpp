// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <string>
#include <vector>

namespace starbif {

/// The coefficient f of the linearized operator, with its derivative
/// along the radial/axial coordinate s (s = x on an interval, s = rho
/// on the disk; disk potentials are radial by construction).
///
/// Built-in families carry analytic derivatives; parsed expressions get
/// a central finite-difference derivative with step fd_step.
class PotentialField {
 public:
  enum class Family { Constant, RadialPoly, Expression };

  PotentialField() = default;

  static PotentialField constant(double c);
  /// f(s) = coeffs[0] + coeffs[1] s^2 + coeffs[2] s^4 + ...
  static PotentialField radial_poly(std::vector<double> coeffs);
  static PotentialField from_callable(std::function<double(double)> eval,
                                      std::string rendered, double fd_step);

  double operator()(double s) const { return eval_(s); }
  /// df/ds.
  double derivative(double s) const;

  Family family() const { return family_; }
  /// Serialized form for config round-trips and reports.
  const std::string& repr() const { return repr_; }
  bool is_constant() const { return family_ == Family::Constant; }
  double constant_value() const { return const_value_; }

 private:
  Family family_ = Family::Constant;
  std::function<double(double)> eval_ = [](double) { return 0.0; };
  std::vector<double> poly_;    // RadialPoly coefficients
  double const_value_ = 0.0;
  double fd_step_ = 1e-7;
  std::string repr_ = "0";
};

}  // namespace starbif
