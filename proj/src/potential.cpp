// SPDX-License-Identifier: Apache-2.0
#include "starbif/potential.hpp"

#include <cmath>
#include <sstream>
#include <utility>

namespace starbif {

namespace {
std::string format_double(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}
}  // namespace

PotentialField PotentialField::constant(double c) {
  PotentialField p;
  p.family_ = Family::Constant;
  p.const_value_ = c;
  p.eval_ = [c](double) { return c; };
  p.repr_ = format_double(c);
  return p;
}

PotentialField PotentialField::radial_poly(std::vector<double> coeffs) {
  PotentialField p;
  p.family_ = Family::RadialPoly;
  p.poly_ = std::move(coeffs);
  if (p.poly_.empty()) p.poly_.push_back(0.0);
  const auto c = p.poly_;
  p.eval_ = [c](double s) {
    // Horner in s^2
    const double s2 = s * s;
    double acc = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * s2 + *it;
    return acc;
  };
  std::ostringstream os;
  for (std::size_t i = 0; i < p.poly_.size(); ++i) {
    if (i) os << ' ';
    os << format_double(p.poly_[i]);
  }
  p.repr_ = os.str();
  return p;
}

PotentialField PotentialField::from_callable(std::function<double(double)> eval,
                                             std::string rendered, double fd_step) {
  PotentialField p;
  p.family_ = Family::Expression;
  p.eval_ = std::move(eval);
  p.repr_ = std::move(rendered);
  p.fd_step_ = fd_step;
  return p;
}

double PotentialField::derivative(double s) const {
  switch (family_) {
    case Family::Constant:
      return 0.0;
    case Family::RadialPoly: {
      // d/ds sum c_j s^{2j} = sum 2j c_j s^{2j-1}
      const double s2 = s * s;
      double acc = 0.0;
      for (std::size_t j = poly_.size(); j-- > 1;)
        acc = acc * s2 + 2.0 * static_cast<double>(j) * poly_[j];
      return acc * s;
    }
    case Family::Expression:
      return (eval_(s + fd_step_) - eval_(s - fd_step_)) / (2.0 * fd_step_);
  }
  return 0.0;
}

}  // namespace starbif
