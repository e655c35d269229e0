#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace optonet {

/// Base for every error the library throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A NetworkParams field violates its invariant.
class ValidationError : public Error {
 public:
  ValidationError(std::string field, const std::string& what)
      : Error("invalid parameter '" + field + "': " + what), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

/// Caller broke a precondition (shape mismatch, absent mode, bad argument).
class ContractError : public Error {
 public:
  using Error::Error;
};

/// Eigenvalue iteration failed, singular system, residual out of tolerance.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// The drift matrix is not strictly Hurwitz, so no steady state exists.
class StabilityError : public Error {
 public:
  StabilityError(const std::string& what, double max_real)
      : Error(what), max_real_(max_real) {}
  double max_real() const noexcept { return max_real_; }

 private:
  double max_real_;
};

/// A reduced covariance fails the uncertainty-principle bound.
class UnphysicalCovarianceError : public Error {
 public:
  using Error::Error;
};

/// G1 = G2 = 0: hybrid mechanical modes are undefined.
class DegenerateConfigurationError : public Error {
 public:
  using Error::Error;
};

/// A coupling-configuration request outside the supported taxonomy.
class UnsupportedConfigurationError : public Error {
 public:
  using Error::Error;
};

/// Parameter file or command-line configuration problem.
class ConfigError : public Error {
 public:
  ConfigError(std::string source, int line, const std::string& what)
      : Error(format(source, line, what)), source_(std::move(source)), line_(line) {}
  const std::string& source() const noexcept { return source_; }
  int line() const noexcept { return line_; }

 private:
  static std::string format(const std::string& source, int line, const std::string& what) {
    if (line > 0) return source + ":" + std::to_string(line) + ": " + what;
    if (!source.empty()) return source + ": " + what;
    return what;
  }
  std::string source_;
  int line_;
};

}  // namespace optonet
