#pragma once

#include <stdexcept>
#include <string>

namespace capwave {

/// Base class for all library errors.
struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Invalid user input: bad grid sizes, malformed config or checkpoint files,
/// parameters outside their admissible range. CLI exit code 2.
struct ConfigError : Error {
  explicit ConfigError(const std::string& msg) : Error(msg) {}
};

/// Loss of numerical validity: non-finite values, reality violations,
/// degenerate derived quantities. CLI exit code 4.
struct NumericalError : Error {
  explicit NumericalError(const std::string& msg) : Error(msg) {}
};

}  // namespace capwave
