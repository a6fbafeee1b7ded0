#include "dads/scalar_function.hpp"

#include <sstream>

namespace dads {

ScalarClassFunction::ScalarClassFunction(Family family, Vec params)
    : family_(family), params_(std::move(params)) {
  for (double p : params_) {
    if (!std::isfinite(p)) throw ConfigError("scalar function parameter must be finite");
  }
  derive_flags();
}

ScalarClassFunction ScalarClassFunction::power(double coeff, double exponent) {
  return {Family::power, {coeff, exponent}};
}

ScalarClassFunction ScalarClassFunction::affine_power(double c0, double c1, double exponent) {
  return {Family::affine_power, {c0, c1, exponent}};
}

ScalarClassFunction ScalarClassFunction::saturating(double c) { return {Family::saturating, {c}}; }

ScalarClassFunction ScalarClassFunction::constant(double c) { return {Family::constant, {c}}; }

ScalarClassFunction ScalarClassFunction::sum_of_powers(Vec coeffs, Vec exponents) {
  if (coeffs.size() != exponents.size() || coeffs.empty()) {
    throw ConfigError("sum-of-powers needs matching, non-empty coefficient and exponent lists");
  }
  Vec params;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    params.push_back(coeffs[i]);
    params.push_back(exponents[i]);
  }
  return {Family::sum_of_powers, std::move(params)};
}

ScalarClassFunction ScalarClassFunction::custom(std::function<double(double)> fn, Flags flags) {
  ScalarClassFunction f(Family::custom, {});
  f.custom_ = std::move(fn);
  f.flags_ = flags;
  return f;
}

void ScalarClassFunction::derive_flags() {
  const auto& p = params_;
  Flags f;
  switch (family_) {
    case Family::power:
      f.is_nondecreasing = p[0] >= 0.0 && p[1] >= 0.0;
      f.is_K = f.is_Kinfinity = p[0] > 0.0 && p[1] > 0.0;
      break;
    case Family::affine_power:
      f.is_nondecreasing = p[0] >= 0.0 && p[1] >= 0.0 && p[2] >= 0.0;
      f.is_K = f.is_Kinfinity = p[0] == 0.0 && p[1] > 0.0 && p[2] > 0.0;
      break;
    case Family::saturating:
      f.is_nondecreasing = p[0] >= 0.0;
      f.is_K = p[0] > 0.0;
      break;
    case Family::constant:
      f.is_nondecreasing = p[0] >= 0.0;
      break;
    case Family::sum_of_powers: {
      bool all_pos = true;
      bool all_nonneg = true;
      for (std::size_t i = 0; i < p.size(); i += 2) {
        all_pos = all_pos && p[i] > 0.0 && p[i + 1] > 0.0;
        all_nonneg = all_nonneg && p[i] >= 0.0 && p[i + 1] >= 0.0;
      }
      f.is_nondecreasing = all_nonneg;
      f.is_K = f.is_Kinfinity = all_pos;
      break;
    }
    case Family::custom:
      break;
  }
  flags_ = f;
}

double ScalarClassFunction::operator()(double s) const {
  const auto& p = params_;
  switch (family_) {
    case Family::power: return p[0] * std::pow(s, p[1]);
    case Family::affine_power: return p[0] + p[1] * std::pow(s, p[2]);
    case Family::saturating: return p[0] * s / (1.0 + s);
    case Family::constant: return p[0];
    case Family::sum_of_powers: {
      double v = 0.0;
      for (std::size_t i = 0; i < p.size(); i += 2) v += p[i] * std::pow(s, p[i + 1]);
      return v;
    }
    case Family::custom: return custom_(s);
  }
  return 0.0;
}

double ScalarClassFunction::inverse(double value) const {
  if (family_ == Family::custom) throw ContractError("inverse is unavailable for custom scalar functions");
  if (!flags_.is_Kinfinity) throw ContractError("inverse requires a K-infinity function: " + describe());
  if (!(value >= 0.0)) throw DomainError("inverse: argument must be >= 0");
  if (value == 0.0) return 0.0;
  double hi = 1.0;
  while ((*this)(hi) < value) {
    hi *= 2.0;
    if (!std::isfinite(hi)) throw DomainError("inverse: bracket overflow");
  }
  double lo = 0.0;
  while (hi - lo > 1e-12 * hi) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    ((*this)(mid) < value ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

std::string ScalarClassFunction::describe() const {
  std::ostringstream os;
  switch (family_) {
    case Family::power: os << "power"; break;
    case Family::affine_power: os << "affine-power"; break;
    case Family::saturating: os << "saturating"; break;
    case Family::constant: os << "constant"; break;
    case Family::sum_of_powers: os << "sum-of-powers"; break;
    case Family::custom: os << "custom"; break;
  }
  for (double p : params_) os << ' ' << format_g17(p);
  return os.str();
}

ScalarClassFunction ScalarClassFunction::parse(std::string_view text) {
  std::istringstream is{std::string(text)};
  std::string name;
  is >> name;
  Vec nums;
  std::string tok;
  while (is >> tok) {
    try {
      std::size_t used = 0;
      nums.push_back(std::stod(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw ConfigError("scalar function: bad number '" + tok + "'");
    }
  }
  auto need = [&](std::size_t n) {
    if (nums.size() != n) throw ConfigError("scalar function '" + name + "' expects " + std::to_string(n) + " numbers");
  };
  if (name == "power") { need(2); return power(nums[0], nums[1]); }
  if (name == "affine-power") { need(3); return affine_power(nums[0], nums[1], nums[2]); }
  if (name == "saturating") { need(1); return saturating(nums[0]); }
  if (name == "constant") { need(1); return constant(nums[0]); }
  if (name == "sum-of-powers") {
    if (nums.empty() || nums.size() % 2 != 0) throw ConfigError("sum-of-powers expects coefficient/exponent pairs");
    Vec c, e;
    for (std::size_t i = 0; i < nums.size(); i += 2) {
      c.push_back(nums[i]);
      e.push_back(nums[i + 1]);
    }
    return sum_of_powers(std::move(c), std::move(e));
  }
  throw ConfigError("unknown scalar function family '" + name + "'");
}

void ScalarClassFunction::validate(double threshold) const {
  auto fail = [&](const std::string& why) { throw ContractError(describe() + ": " + why); };
  constexpr int kPoints = 400;
  double prev = (*this)(0.0);
  if (flags_.is_K && prev != 0.0) fail("class K function must vanish at 0");
  for (int i = 1; i <= kPoints; ++i) {
    const double s = std::pow(10.0, -6.0 + 12.0 * i / kPoints);
    const double v = (*this)(s);
    if (!std::isfinite(v)) fail("non-finite value");
    if (flags_.is_nondecreasing && v < prev) fail("not non-decreasing");
    if (flags_.is_K && !(v > prev)) fail("not strictly increasing");
    prev = v;
  }
  if (flags_.is_Kinfinity && !((*this)(1e9) > threshold)) fail("K-infinity function too small at 1e9");
  if (flags_.is_Kinfinity && family_ != Family::custom) {
    for (int i = 0; i <= 60; ++i) {
      const double s = std::pow(10.0, -3.0 + 6.0 * i / 60);
      const double back = (*this)(inverse(s));
      if (std::abs(back - s) > 1e-10 * s) fail("inverse round trip failed");
    }
  }
}

}  // namespace dads
