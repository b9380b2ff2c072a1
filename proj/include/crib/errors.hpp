#pragma once

#include <stdexcept>
#include <string>

namespace crib {

/// Configuration problem: bad syntax, unknown key, or violated constraint.
/// `path` names the offending config entry (e.g. "grid.Nz") when known.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& message, std::string path = "")
      : std::runtime_error(message), path_(std::move(path)) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

/// Numerical failure during a run (NaN, norm drift, CFL mismatch).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Command-line usage problem.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace crib
