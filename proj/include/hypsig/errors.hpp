#pragma once

#include <stdexcept>
#include <string>

namespace hypsig {

// Bad user input: unknown keys, out-of-contract parameters. CLI exit code 2.
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// A module-level invariant check failed at runtime. CLI exit code 3.
struct InvariantError : std::runtime_error {
  explicit InvariantError(const std::string& what) : std::runtime_error(what) {}
};

// Numerical breakdown: non-convergence, underflow of a whole density, ...
// CLI exit code 4.
struct NumericalError : std::runtime_error {
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace hypsig
