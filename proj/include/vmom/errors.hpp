#pragma once

/// @file errors.hpp
/// @brief Exception types separating configuration mistakes from runtime
///        numerical failures, so callers (and the CLI) can map them to
///        distinct exit codes.

#include <stdexcept>
#include <string>

namespace vmom {

/// Invalid user-supplied configuration: bad scenario files, out-of-domain
/// parameters, unsupported option combinations.  CLI exit code 2.
class config_error : public std::runtime_error {
 public:
  explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

/// Numerical failure during a run: NaN/Inf state, CFL violation, divergent
/// quadrature where a finite value is required.  CLI exit code 3.
class numeric_error : public std::runtime_error {
 public:
  explicit numeric_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace vmom
