// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "starbif/geometry.hpp"

using namespace starbif;

TEST_CASE("interval domains validate the origin position") {
  Domain d = make_domain({DomainKind::Interval, -1.0, 1.0, 0.0});
  CHECK(d.dimension() == 1);
  CHECK(d.diameter() == doctest::Approx(2.0));

  CHECK_THROWS_AS(make_domain({DomainKind::Interval, 0.5, 1.0, 0.0}), NotStarShaped);
  CHECK_THROWS_AS(make_domain({DomainKind::Interval, -1.0, -0.25, 0.0}), NotStarShaped);
  CHECK_THROWS_AS(make_domain({DomainKind::Interval, 1.0, -1.0, 0.0}), ConfigError);
}

TEST_CASE("disk domains reject nonpositive radii") {
  Domain d = make_domain({DomainKind::Disk, 0.0, 0.0, 1.0});
  CHECK(d.dimension() == 2);
  CHECK_THROWS_AS(make_domain({DomainKind::Disk, 0.0, 0.0, 0.0}), ConfigError);
  CHECK_THROWS_AS(make_domain({DomainKind::Disk, 0.0, 0.0, -2.0}), ConfigError);
}

TEST_CASE("interval boundary sample: endpoints, outward normals, unit support") {
  Domain d = make_domain({DomainKind::Interval, -1.0, 1.0, 0.0});
  BoundarySample bs = boundary_sample(d, 1);
  REQUIRE(bs.size() == 2);
  CHECK(bs.points[0].x() == doctest::Approx(-1.0));
  CHECK(bs.points[1].x() == doctest::Approx(1.0));
  CHECK(bs.normals[0].x() == doctest::Approx(-1.0));
  CHECK(bs.normals[1].x() == doctest::Approx(1.0));
  CHECK(bs.support_values[0] == doctest::Approx(1.0));
  CHECK(bs.support_values[1] == doctest::Approx(1.0));
}

TEST_CASE("disk boundary sample invariants hold for random radii and resolutions") {
  std::mt19937 rng(42);
  std::uniform_real_distribution<double> radius(0.1, 10.0);
  std::uniform_int_distribution<int> res(1, 512);
  for (int trial = 0; trial < 100; ++trial) {
    const double R = radius(rng);
    Domain d = make_domain({DomainKind::Disk, 0.0, 0.0, R});
    BoundarySample bs = boundary_sample(d, res(rng));
    double total = 0.0;
    for (std::size_t i = 0; i < bs.size(); ++i) {
      CHECK(std::fabs(bs.normals[i].norm() - 1.0) <= 1e-12);
      CHECK(bs.support_values[i] > 0.0);
      CHECK(bs.support_values[i] == doctest::Approx(R).epsilon(1e-12));
      // support function is literally <x, n>
      CHECK(bs.points[i].dot(bs.normals[i]) == doctest::Approx(bs.support_values[i]));
      total += bs.weights[i];
    }
    CHECK(total == doctest::Approx(d.boundary_measure()).epsilon(1e-10));
  }
}

TEST_CASE("interval boundary measure counts both endpoints") {
  Domain d = make_domain({DomainKind::Interval, -0.3, 2.0, 0.0});
  BoundarySample bs = boundary_sample(d, 7);
  CHECK(bs.weights[0] + bs.weights[1] == doctest::Approx(2.0));
}

TEST_CASE("star shape margin equals the closed-form support minimum") {
  CHECK(star_shape_margin(make_domain({DomainKind::Interval, -1.0, 1.0, 0.0})) ==
        doctest::Approx(1.0));
  CHECK(star_shape_margin(make_domain({DomainKind::Interval, -0.5, 2.0, 0.0})) ==
        doctest::Approx(0.5));
  CHECK(star_shape_margin(make_domain({DomainKind::Disk, 0.0, 0.0, 3.0})) == doctest::Approx(3.0));
}

TEST_CASE("margin is resolution independent for exact geometries") {
  Domain d = make_domain({DomainKind::Disk, 0.0, 0.0, 1.7});
  for (int res : {8, 64, 1024}) {
    BoundarySample bs = boundary_sample(d, res);
    double margin = bs.support_values[0];
    for (double s : bs.support_values) margin = std::min(margin, s);
    CHECK(std::fabs(margin - 1.7) <= 1e-12);
  }
}
