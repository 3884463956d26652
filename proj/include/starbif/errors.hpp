// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace starbif {

/// Base class for all toolkit errors.
struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Invalid configuration or input file (process exit code 1).
struct ConfigError : Error {
  explicit ConfigError(const std::string& msg) : Error(msg) {}
};

/// A standing hypothesis of the method is violated by the problem data
/// (process exit code 2), e.g. the domain is not star-shaped with respect
/// to the origin, or the linearized operator is degenerate at r = 1.
struct AssumptionViolation : Error {
  explicit AssumptionViolation(const std::string& msg) : Error(msg) {}
};

struct NotStarShaped : AssumptionViolation {
  explicit NotStarShaped(const std::string& msg) : AssumptionViolation(msg) {}
};

/// Numerical or I/O failure (process exit code 3).
struct NumericalFailure : Error {
  explicit NumericalFailure(const std::string& msg) : Error(msg) {}
};

/// Some eigenvalue lies inside the zero tolerance band, so the negative
/// count is not well defined at this parameter value. At sweep endpoints
/// this is an assumption violation; inside a sweep it marks a crossing.
struct IndeterminateIndex : Error {
  explicit IndeterminateIndex(const std::string& msg) : Error(msg) {}
};

/// kernel_basis found no eigenvalue within tolerance of zero.
struct EmptyKernel : Error {
  explicit EmptyKernel(const std::string& msg) : Error(msg) {}
};

}  // namespace starbif
