#pragma once

#include <stdexcept>
#include <string>

namespace fpsir {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on an argument or configuration value does not hold.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Field or trajectory shapes do not match the grid they are used with.
class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// The requested number of substeps violates the explicit stability bound.
class CflViolation : public Error {
 public:
  CflViolation(int requested, int required)
      : Error("CFL violation: " + std::to_string(requested) +
              " substeps requested, " + std::to_string(required) +
              " required"),
        requested_(requested),
        required_(required) {}

  int requested() const noexcept { return requested_; }
  int required() const noexcept { return required_; }

 private:
  int requested_;
  int required_;
};

/// An output file or directory could not be created or written.
class IoError : public Error {
 public:
  using Error::Error;
};

/// NaN or Inf appeared in a solution field.
class NumericalFailure : public Error {
 public:
  using Error::Error;
};

/// Malformed configuration text; carries the offending 1-based line number
/// (0 when the error is not tied to a line).
class ConfigError : public Error {
 public:
  ConfigError(int line, const std::string& message)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + message
                       : message),
        line_(line) {}

  int line() const noexcept { return line_; }

 private:
  int line_;
};

}  // namespace fpsir
