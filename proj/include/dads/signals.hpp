#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "dads/common.hpp"

namespace dads {

enum class SignalKind { zero, constant, sinusoid_sum, piecewise_constant, decaying_exponential };

const char* to_string(SignalKind kind);
SignalKind parse_signal_kind(std::string_view text);

// Parameter layout per kind (dim = D):
//   zero                  : (empty)
//   constant              : v_1..v_D
//   sinusoid_sum          : dir_1..dir_D, then triples (amplitude, frequency, phase)
//                           value(t) = dir * sum_j amplitude_j sin(frequency_j t + phase_j)
//   piecewise_constant    : K, breakpoints b_1 < ... < b_{K-1}, then K blocks of D values
//                           segment j holds on [b_j, b_{j+1}) (right-continuous)
//   decaying_exponential  : lambda > 0, v_1..v_D; value(t) = v exp(-lambda t)
struct SignalSpec {
  int dim = 1;
  SignalKind kind = SignalKind::zero;
  Vec params;
  std::uint64_t seed = 0;

  static SignalSpec zero(int dim);
  static SignalSpec constant(Vec value);
  static SignalSpec sinusoid(double amplitude, double frequency, double phase = 0.0);
};

/// Throws ConfigError when params do not match the layout for kind/dim.
void validate(const SignalSpec& spec);

Vec eval_signal(const SignalSpec& spec, double t);

/// Exact sup-norm for zero/constant/piecewise/exponential. For sinusoid-sum it is
/// |dir| * sum |amplitude_j|, attained whenever the terms can align (e.g. equal
/// phases and frequencies congruent to 1 mod 4).
double signal_sup_norm(const SignalSpec& spec);

/// True when the signal does not depend on t.
bool is_time_invariant(const SignalSpec& spec);

SignalSpec make_seeded_bounded(std::uint64_t seed, int dim, double bound, SignalKind kind);

/// Canonical text form; equal specs serialize to identical bytes.
std::string serialize(const SignalSpec& spec);

/// Counter-based generator: draw i of stream `seed` is a pure function of (seed, i).
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : seed_(seed) {}
  std::uint64_t at(std::uint64_t index) const;
  std::uint64_t next() { return at(counter_++); }
  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  SplitMix64 split(std::uint64_t stream) const { return SplitMix64(at(~stream)); }

 private:
  std::uint64_t seed_;
  std::uint64_t counter_ = 0;
};

}  // namespace dads
