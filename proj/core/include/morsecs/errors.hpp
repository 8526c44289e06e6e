#pragma once

#include <stdexcept>
#include <string>

namespace morsecs {

/// Base class for everything thrown by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid mathematical input: out-of-range index, non-positive argument,
/// non-normalizable parameters, degenerate recurrence denominators.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A numerical result failed its own accuracy check (quadrature
/// non-convergence, variance below the allowed negative tolerance, ...).
class AccuracyError : public Error {
 public:
  using Error::Error;
};

/// Inconsistent run configuration (CLI flags, config files, table/state
/// dimension mismatches).
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace morsecs
