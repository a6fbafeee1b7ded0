#pragma once

#include <functional>
#include <string>
#include <string_view>

#include "dads/common.hpp"

namespace dads {

/// Scalar comparison function on [0, inf) drawn from a closed parametric family
/// (class K / K-infinity / non-decreasing), or a user callable with declared flags.
class ScalarClassFunction {
 public:
  enum class Family { power, affine_power, saturating, constant, sum_of_powers, custom };

  struct Flags {
    bool is_K = false;
    bool is_Kinfinity = false;
    bool is_nondecreasing = false;
  };

  /// coeff * s^exponent
  static ScalarClassFunction power(double coeff, double exponent);
  /// c0 + c1 * s^exponent
  static ScalarClassFunction affine_power(double c0, double c1, double exponent);
  /// c * s / (1 + s)
  static ScalarClassFunction saturating(double c);
  static ScalarClassFunction constant(double c);
  /// sum_i coeffs[i] * s^exponents[i]
  static ScalarClassFunction sum_of_powers(Vec coeffs, Vec exponents);
  /// Arbitrary callable; inverse() is unavailable.
  static ScalarClassFunction custom(std::function<double(double)> fn, Flags flags);

  /// Parses "power 2 1.5", "affine-power 1 2 3", "saturating 1", "constant 1",
  /// "sum-of-powers 1 1 0.5 3" (coeff exponent pairs).
  static ScalarClassFunction parse(std::string_view text);

  double operator()(double s) const;
  double inverse(double value) const;

  Family family() const { return family_; }
  const Flags& flags() const { return flags_; }
  const Vec& parameters() const { return params_; }
  std::string describe() const;

  /// Checks the declared flags on a sampling grid; throws ContractError on the
  /// first violation. `threshold` is the level a K-infinity function must exceed at 1e9.
  void validate(double threshold = 1e6) const;

 private:
  ScalarClassFunction(Family family, Vec params);
  void derive_flags();

  Family family_;
  Vec params_;
  Flags flags_;
  std::function<double(double)> custom_;
};

}  // namespace dads
