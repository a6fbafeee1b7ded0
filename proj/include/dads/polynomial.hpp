#pragma once

#include <array>
#include <string>
#include <string_view>

#include "dads/common.hpp"

namespace dads {

/// Polynomial in the three scalar variables (y, w, delta), used for
/// config-defined certificate bundles with n = l = q = 1.
class Polynomial {
 public:
  struct Term {
    double coeff;
    std::array<int, 3> powers;  // y, w, delta
  };

  Polynomial() = default;
  explicit Polynomial(std::vector<Term> terms);

  /// Parses a sum of products such as "-y - y^3" or "2*y^2*w". Factors are
  /// numbers or one of y, w, delta with an optional ^integer; no parentheses.
  static Polynomial parse(std::string_view text);

  double operator()(double y, double w = 0.0, double delta = 0.0) const;
  /// Partial derivative in variable 0 (y), 1 (w) or 2 (delta).
  Polynomial derivative(int variable) const;
  bool depends_on(int variable) const;
  const std::vector<Term>& terms() const { return terms_; }

 private:
  std::vector<Term> terms_;
};

}  // namespace dads
