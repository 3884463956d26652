// SPDX-License-Identifier: Apache-2.0
#include "starbif/geometry.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace starbif {

namespace {
constexpr double kPi = 3.14159265358979323846;

bool finite(double x) { return std::isfinite(x); }
}  // namespace

double Domain::measure() const {
  return kind == DomainKind::Interval ? b - a : kPi * radius * radius;
}

double Domain::boundary_measure() const {
  return kind == DomainKind::Interval ? 2.0 : 2.0 * kPi * radius;
}

Domain make_domain(const DomainSpec& spec) {
  Domain d;
  d.kind = spec.kind;
  if (spec.kind == DomainKind::Interval) {
    if (!finite(spec.a) || !finite(spec.b)) throw ConfigError("interval endpoints must be finite");
    if (!(spec.a < spec.b)) throw ConfigError("interval requires a < b");
    if (!(spec.a < 0.0 && 0.0 < spec.b)) {
      std::ostringstream msg;
      msg << "interval (" << spec.a << ", " << spec.b
          << ") is not star-shaped with respect to 0: the origin must lie strictly inside";
      throw NotStarShaped(msg.str());
    }
    d.a = spec.a;
    d.b = spec.b;
  } else {
    if (!finite(spec.radius) || spec.radius <= 0.0)
      throw ConfigError("disk radius must be positive");
    d.radius = spec.radius;
  }
  return d;
}

BoundarySample boundary_sample(const Domain& d, int resolution) {
  if (resolution < 1) throw ConfigError("boundary resolution must be >= 1");
  BoundarySample bs;
  if (d.kind == DomainKind::Interval) {
    // two endpoints, unit weight each
    bs.points = {{d.a, 0.0}, {d.b, 0.0}};
    bs.normals = {{-1.0, 0.0}, {1.0, 0.0}};
    bs.weights = {1.0, 1.0};
    bs.support_values = {-d.a, d.b};
  } else {
    const double w = 2.0 * kPi * d.radius / resolution;
    bs.points.reserve(resolution);
    for (int i = 0; i < resolution; ++i) {
      const double theta = 2.0 * kPi * i / resolution;
      const Eigen::Vector2d n(std::cos(theta), std::sin(theta));
      bs.points.push_back(d.radius * n);
      bs.normals.push_back(n);
      bs.weights.push_back(w);
      bs.support_values.push_back(d.radius);
    }
  }
  return bs;
}

double star_shape_margin(const Domain& d) {
  const BoundarySample bs = boundary_sample(d, 256);
  double margin = std::numeric_limits<double>::infinity();
  for (double s : bs.support_values) margin = std::min(margin, s);
  return margin;
}

}  // namespace starbif
