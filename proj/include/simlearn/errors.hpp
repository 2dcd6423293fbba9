#pragma once

#include <stdexcept>
#include <string>

namespace simlearn {

/// Bad argument (out-of-range degree, dimension mismatch, non-unit vector, ...).
class ArgumentError : public std::invalid_argument {
 public:
  explicit ArgumentError(const std::string& what) : std::invalid_argument(what) {}
};

/// A dense allocation would exceed the configured materialization cap.
class ResourceError : public std::runtime_error {
 public:
  explicit ResourceError(const std::string& what) : std::runtime_error(what) {}
};

/// Structurally valid input on which the operation is undefined
/// (zero matrix fed to an SVD, zero-length step denominator, ...).
class DegenerateInputError : public std::runtime_error {
 public:
  explicit DegenerateInputError(const std::string& what) : std::runtime_error(what) {}
};

/// A link whose coefficients carry no information exponent.
class InvalidLinkError : public std::runtime_error {
 public:
  explicit InvalidLinkError(const std::string& what) : std::runtime_error(what) {}
};

/// Configuration file violates the schema. `location` points at the offending
/// spot: "line N" for parse errors, a JSON pointer for semantic ones.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& location, const std::string& what)
      : std::runtime_error(location + ": " + what), location_(location) {}
  const std::string& location() const { return location_; }

 private:
  std::string location_;
};

}  // namespace simlearn
