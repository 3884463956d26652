// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Core>
#include <vector>

#include "starbif/errors.hpp"

namespace starbif {

enum class DomainKind { Interval, Disk };

/// Descriptor as it arrives from a config file, prior to validation.
struct DomainSpec {
  DomainKind kind = DomainKind::Interval;
  double a = -1.0;     // interval left endpoint
  double b = 1.0;      // interval right endpoint
  double radius = 1.0; // disk radius
};

/// A validated domain, star-shaped with respect to the origin.
/// Interval (a, b) with a < 0 < b, or disk of radius R > 0 centered at 0.
struct Domain {
  DomainKind kind;
  double a = 0.0;
  double b = 0.0;
  double radius = 0.0;

  int dimension() const { return kind == DomainKind::Interval ? 1 : 2; }
  double diameter() const { return kind == DomainKind::Interval ? b - a : 2.0 * radius; }
  /// Lebesgue measure: b - a, or pi R^2.
  double measure() const;
  /// Boundary measure: 2 point-endpoints with unit weight, or 2 pi R.
  double boundary_measure() const;
};

/// Boundary positions with outward unit normals, surface quadrature
/// weights, and the support function <x, n(x)> per point.
struct BoundarySample {
  std::vector<Eigen::Vector2d> points;
  std::vector<Eigen::Vector2d> normals;
  std::vector<double> weights;
  std::vector<double> support_values;

  std::size_t size() const { return points.size(); }
};

/// Validates a descriptor. Throws NotStarShaped if 0 is not strictly
/// interior, ConfigError on non-finite or nonpositive parameters.
Domain make_domain(const DomainSpec& spec);

/// Samples the boundary. The interval always yields its two endpoints;
/// the disk yields `resolution` equispaced angles.
BoundarySample boundary_sample(const Domain& d, int resolution);

/// min over the boundary of <x, n(x)>; the pipeline aborts if <= 0.
double star_shape_margin(const Domain& d);

}  // namespace starbif
