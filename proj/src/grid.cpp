// SPDX-License-Identifier: Apache-2.0
#include "starbif/grid.hpp"

namespace starbif {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

Grid build_grid(const Domain& d, int n, int nu_max) {
  if (n < 8) throw ConfigError("grid requires n >= 8 nodes per direction");
  Grid g;
  g.domain = d;
  g.n = n;
  g.nodes.resize(n);
  g.base_weights.resize(n);

  if (d.kind == DomainKind::Interval) {
    g.h = (d.b - d.a) / (n + 1);
    for (int i = 0; i < n; ++i) {
      g.nodes[i] = d.a + (i + 1) * g.h;
      g.base_weights[i] = g.h;
    }
    g.modes = {ModeBlock{0, 1.0, 1}};
    // boundary order matches boundary_sample: left endpoint, right endpoint
    g.boundary_adjacency = {BoundaryStencil{0, 1}, BoundaryStencil{n - 1, n - 2}};
  } else {
    if (nu_max < 0) throw ConfigError("nu_max must be >= 0");
    g.h = d.radius / (n + 1);
    for (int j = 0; j < n; ++j) {
      g.nodes[j] = (j + 1) * g.h;
      g.base_weights[j] = g.nodes[j] * g.h;
    }
    g.modes.reserve(nu_max + 1);
    for (int nu = 0; nu <= nu_max; ++nu)
      g.modes.push_back(ModeBlock{nu, nu == 0 ? 2.0 * kPi : kPi, nu == 0 ? 1 : 2});
    // every angular boundary sample shares the outermost radial nodes
    g.boundary_adjacency = {BoundaryStencil{n - 1, n - 2}};
  }
  return g;
}

}  // namespace starbif
