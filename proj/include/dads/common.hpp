#pragma once

#include <cmath>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace dads {

using Vec = std::vector<double>;

inline constexpr double kPi = std::numbers::pi;

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Malformed or inconsistent configuration (bad keys, dimension mismatch).
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Caller broke a documented precondition on an input object.
class ContractError : public Error {
 public:
  using Error::Error;
};

enum class GuardKind { gain_overflow, blowup, non_finite };

/// A runtime guard tripped during simulation.
class GuardAbort : public Error {
 public:
  GuardAbort(GuardKind kind, const std::string& what) : Error(what), kind_(kind) {}
  GuardKind kind() const noexcept { return kind_; }

 private:
  GuardKind kind_;
};

const char* to_string(GuardKind kind);

inline double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double norm2(std::span<const double> a) { return std::sqrt(dot(a, a)); }

inline double positive_part(double x) { return x > 0.0 ? x : 0.0; }

/// printf("%.17g"), the round-trip format used by every file writer.
std::string format_g17(double x);

}  // namespace dads
