#pragma once

#include <stdexcept>
#include <string>

namespace spectator {

// Error taxonomy shared by the library, the C API and the CLI exit codes.

/// Bad input data: malformed files, violated domain invariants, parameters
/// outside an operation's documented domain.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

/// A numerical procedure failed: root finder did not converge, calibration
/// target unattainable, integrator produced non-unitary drift, all sweep
/// points diverged.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Filesystem problems (missing or unwritable paths).
class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace spectator
