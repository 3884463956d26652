// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>

#include "starbif/bifurcation.hpp"
#include "starbif/geometry.hpp"
#include "starbif/nonlinearity.hpp"
#include "starbif/sweep.hpp"

namespace starbif {

/// Full run description, read from a flat sectioned key-value file:
///
///   [domain]
///   kind = interval          # interval | disk
///   a = -1.0
///   b = 1.0
///   # radius = 1.0           # disk only
///
///   [potential]
///   constant = -100.0        # exactly one of constant | radial_poly | expr
///   # radial_poly = -100 0.5 # f = c0 + c1 rho^2 + c2 rho^4 + ...
///   # expr = -(10 + rho^2)^2
///
///   [nonlinearity]           # optional section; defaults to the linear problem
///   kappa = 1.0              # or kappa_expr = ...
///   q = 0.0                  # or q_expr = ...
///
///   [sweep]                  # all keys optional
///   n = 2000
///   r_min = 0.02
///   r_points = 200
///   k = 8
///   nu_max = 12
///   refine_tol_r = 1e-6
///   tol_zero = auto
///
///   [bifurcation]            # all keys optional
///   enabled = true
///   tol_newton = 1e-10
///   match_tol = 5e-3
///   seed_amplitude = auto
///
///   [output]
///   dir = out
struct ProblemSpec {
  DomainSpec domain;

  enum class PotentialKind { Constant, RadialPoly, Expression };
  PotentialKind potential_kind = PotentialKind::Constant;
  double potential_constant = 0.0;
  std::vector<double> potential_coeffs;
  std::string potential_expr;

  // nonlinearity coefficients: constant unless the *_expr form is used
  bool kappa_is_expr = false;
  double kappa_constant = 0.0;
  std::string kappa_expr;
  bool q_is_expr = false;
  double q_constant = 0.0;
  std::string q_expr;

  int n = 2000;
  int nu_max = 12;
  SweepParams sweep;
  ProbeParams probe;
  bool run_bifurcation = true;

  std::string output_dir = "out";
};

/// Parses the key-value format above. Diagnostics carry line numbers;
/// unknown or duplicate keys are errors.
ProblemSpec parse_config(const std::string& text);

/// Canonical rendering; parse_config(render_config(s)) == s.
std::string render_config(const ProblemSpec& spec);

bool spec_equal(const ProblemSpec& a, const ProblemSpec& b);

/// Instantiates the validated pieces.
Domain domain_of(const ProblemSpec& spec);
PotentialField potential_of(const ProblemSpec& spec, const Domain& d);
NonlinearitySpec nonlinearity_of(const ProblemSpec& spec, const Domain& d);

}  // namespace starbif
