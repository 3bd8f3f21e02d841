#pragma once

#include <stdexcept>
#include <string>

namespace risfox {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Gamma function evaluated at a non-positive integer.
class PoleError : public Error {
 public:
  using Error::Error;
};

// Argument outside the support or parameter domain of a function.
class DomainError : public Error {
 public:
  using Error::Error;
};

// No vertical line separates the two pole families of a Mellin-Barnes integrand.
class NoContourError : public Error {
 public:
  using Error::Error;
};

// Node doubling or truncation search failed to stabilise within tolerance.
class NonConvergenceError : public Error {
 public:
  using Error::Error;
};

// Requested multivariate evaluation exceeds the configured dimension limit.
class DimensionError : public Error {
 public:
  using Error::Error;
};

// Moment order outside the strip where the Mellin transform converges.
class StripError : public Error {
 public:
  using Error::Error;
};

// A series did not reach its tail tolerance within the allowed number of terms.
class TruncationError : public Error {
 public:
  using Error::Error;
};

class QuadratureError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  ConfigError(const std::string& what, int line = 0, std::string field = {})
      : Error(line > 0 ? "line " + std::to_string(line) + (field.empty() ? "" : " (" + field + ")") + ": " + what
                       : (field.empty() ? what : field + ": " + what)),
        line_(line),
        field_(std::move(field)) {}

  int line() const noexcept { return line_; }
  const std::string& field() const noexcept { return field_; }

 private:
  int line_;
  std::string field_;
};

}  // namespace risfox
