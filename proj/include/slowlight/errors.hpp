#pragma once

#include <stdexcept>
#include <string>

namespace slowlight {

// Config-file / CLI-usage problems; CLI exit code 1.
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// Numerical failures (singular systems, non-convergence, wraparound);
// CLI exit code 2.
struct NumericError : std::runtime_error {
  explicit NumericError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace slowlight
