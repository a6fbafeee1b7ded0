#include "dads/signals.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace dads {

const char* to_string(SignalKind kind) {
  switch (kind) {
    case SignalKind::zero: return "zero";
    case SignalKind::constant: return "constant";
    case SignalKind::sinusoid_sum: return "sinusoid-sum";
    case SignalKind::piecewise_constant: return "piecewise-constant";
    case SignalKind::decaying_exponential: return "decaying-exponential";
  }
  return "unknown";
}

SignalKind parse_signal_kind(std::string_view text) {
  for (auto kind : {SignalKind::zero, SignalKind::constant, SignalKind::sinusoid_sum,
                    SignalKind::piecewise_constant, SignalKind::decaying_exponential}) {
    if (text == to_string(kind)) return kind;
  }
  throw ConfigError("unsupported signal kind '" + std::string(text) + "'");
}

SignalSpec SignalSpec::zero(int dim) {
  SignalSpec s;
  s.dim = dim;
  return s;
}

SignalSpec SignalSpec::constant(Vec value) {
  SignalSpec s;
  s.dim = static_cast<int>(value.size());
  s.kind = SignalKind::constant;
  s.params = std::move(value);
  return s;
}

SignalSpec SignalSpec::sinusoid(double amplitude, double frequency, double phase) {
  SignalSpec s;
  s.kind = SignalKind::sinusoid_sum;
  s.params = {1.0, amplitude, frequency, phase};
  return s;
}

namespace {

std::size_t udim(const SignalSpec& s) { return static_cast<std::size_t>(s.dim); }

std::size_t segment_count(const SignalSpec& s) { return static_cast<std::size_t>(s.params[0]); }

}  // namespace

void validate(const SignalSpec& s) {
  if (s.dim < 1) throw ConfigError("signal dim must be >= 1");
  const std::size_t d = udim(s);
  const std::size_t n = s.params.size();
  auto fail = [&](const std::string& why) {
    throw ConfigError(std::string("signal ") + to_string(s.kind) + ": " + why);
  };
  for (double v : s.params) {
    if (!std::isfinite(v)) fail("non-finite parameter");
  }
  switch (s.kind) {
    case SignalKind::zero:
      if (n != 0) fail("takes no params");
      break;
    case SignalKind::constant:
      if (n != d) fail("expects dim values");
      break;
    case SignalKind::sinusoid_sum:
      if (n < d || (n - d) % 3 != 0) fail("expects dim direction entries then (amplitude, frequency, phase) triples");
      break;
    case SignalKind::piecewise_constant: {
      if (n < 1 || s.params[0] < 1 || s.params[0] != std::floor(s.params[0])) fail("first param is the segment count");
      const std::size_t k = segment_count(s);
      if (n != 1 + (k - 1) + k * d) fail("expects count, count-1 breakpoints, count*dim values");
      for (std::size_t j = 1; j + 1 < k; ++j) {
        if (!(s.params[j] < s.params[j + 1])) fail("breakpoints must be strictly increasing");
      }
      break;
    }
    case SignalKind::decaying_exponential:
      if (n != 1 + d) fail("expects rate then dim values");
      if (!(s.params[0] > 0.0)) fail("rate must be positive");
      break;
  }
}

Vec eval_signal(const SignalSpec& s, double t) {
  if (!(t >= 0.0)) throw DomainError("eval_signal: t must be >= 0");
  const std::size_t d = udim(s);
  Vec out(d, 0.0);
  switch (s.kind) {
    case SignalKind::zero:
      break;
    case SignalKind::constant:
      std::copy(s.params.begin(), s.params.end(), out.begin());
      break;
    case SignalKind::sinusoid_sum: {
      double scalar = 0.0;
      for (std::size_t j = d; j + 2 < s.params.size(); j += 3) {
        scalar += s.params[j] * std::sin(s.params[j + 1] * t + s.params[j + 2]);
      }
      for (std::size_t i = 0; i < d; ++i) out[i] = s.params[i] * scalar;
      break;
    }
    case SignalKind::piecewise_constant: {
      const std::size_t k = segment_count(s);
      std::size_t seg = 0;
      while (seg + 1 < k && t >= s.params[1 + seg]) ++seg;
      const std::size_t base = k + seg * d;
      for (std::size_t i = 0; i < d; ++i) out[i] = s.params[base + i];
      break;
    }
    case SignalKind::decaying_exponential: {
      const double decay = std::exp(-s.params[0] * t);
      for (std::size_t i = 0; i < d; ++i) out[i] = s.params[1 + i] * decay;
      break;
    }
  }
  return out;
}

double signal_sup_norm(const SignalSpec& s) {
  const std::size_t d = udim(s);
  switch (s.kind) {
    case SignalKind::zero:
      return 0.0;
    case SignalKind::constant:
      return norm2(s.params);
    case SignalKind::sinusoid_sum: {
      double amp = 0.0;
      for (std::size_t j = d; j + 2 < s.params.size(); j += 3) amp += std::abs(s.params[j]);
      return norm2(std::span<const double>(s.params).first(d)) * amp;
    }
    case SignalKind::piecewise_constant: {
      const std::size_t k = segment_count(s);
      double best = 0.0;
      for (std::size_t seg = 0; seg < k; ++seg) {
        best = std::max(best, norm2(std::span<const double>(s.params).subspan(k + seg * d, d)));
      }
      return best;
    }
    case SignalKind::decaying_exponential:
      return norm2(std::span<const double>(s.params).subspan(1, d));
  }
  return 0.0;
}

bool is_time_invariant(const SignalSpec& s) {
  if (s.kind == SignalKind::zero || s.kind == SignalKind::constant) return true;
  return signal_sup_norm(s) == 0.0;
}

std::uint64_t SplitMix64::at(std::uint64_t index) const {
  std::uint64_t z = seed_ + (index + 1) * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

namespace {

// Random unit vector in R^dim; falls back to e_1 for a degenerate draw.
Vec random_direction(SplitMix64& rng, int dim) {
  Vec v(static_cast<std::size_t>(dim));
  for (auto& x : v) x = rng.uniform(-1.0, 1.0);
  const double n = norm2(v);
  if (n < 1e-6) {
    std::fill(v.begin(), v.end(), 0.0);
    v[0] = 1.0;
    return v;
  }
  for (auto& x : v) x /= n;
  return v;
}

}  // namespace

SignalSpec make_seeded_bounded(std::uint64_t seed, int dim, double bound, SignalKind kind) {
  if (!(bound >= 0.0)) throw DomainError("make_seeded_bounded: bound must be >= 0");
  if (dim < 1) throw DomainError("make_seeded_bounded: dim must be >= 1");
  SignalSpec s;
  s.dim = dim;
  s.seed = seed;
  if (bound == 0.0 || kind == SignalKind::zero) return s;

  SplitMix64 rng(seed);
  s.kind = kind;
  const double level = bound * rng.uniform(0.5, 1.0);
  switch (kind) {
    case SignalKind::constant: {
      s.params = random_direction(rng, dim);
      for (auto& x : s.params) x *= level;
      break;
    }
    case SignalKind::sinusoid_sum: {
      s.params = random_direction(rng, dim);
      const int terms = 1 + static_cast<int>(rng.next() % 3);
      Vec weights(static_cast<std::size_t>(terms));
      double total = 0.0;
      for (auto& w : weights) total += (w = rng.uniform(0.1, 1.0));
      for (double w : weights) {
        s.params.push_back(level * w / total);
        s.params.push_back(rng.uniform(0.1, 5.0));
        s.params.push_back(rng.uniform(0.0, 2.0 * kPi));
      }
      break;
    }
    case SignalKind::piecewise_constant: {
      const int segments = 2 + static_cast<int>(rng.next() % 4);
      s.params.push_back(segments);
      double t = 0.0;
      for (int j = 1; j < segments; ++j) s.params.push_back(t += rng.uniform(0.5, 10.0));
      for (int j = 0; j < segments; ++j) {
        Vec v = random_direction(rng, dim);
        const double mag = level * rng.uniform(0.0, 1.0);
        for (double x : v) s.params.push_back(x * mag);
      }
      break;
    }
    case SignalKind::decaying_exponential: {
      s.params.push_back(rng.uniform(0.1, 2.0));
      for (double x : random_direction(rng, dim)) s.params.push_back(x * level);
      break;
    }
    case SignalKind::zero:
      break;
  }
  // Rounding in the normalisations can overshoot by an ulp or two.
  const double sup = signal_sup_norm(s);
  if (sup > bound) {
    const double shrink = bound / sup * (1.0 - 1e-15);
    if (kind == SignalKind::sinusoid_sum) {
      for (std::size_t j = static_cast<std::size_t>(dim); j < s.params.size(); j += 3) s.params[j] *= shrink;
    } else if (kind == SignalKind::piecewise_constant) {
      const std::size_t k = segment_count(s);
      for (std::size_t j = k; j < s.params.size(); ++j) s.params[j] *= shrink;
    } else {
      const std::size_t first = kind == SignalKind::decaying_exponential ? 1 : 0;
      for (std::size_t j = first; j < s.params.size(); ++j) s.params[j] *= shrink;
    }
  }
  return s;
}

std::string serialize(const SignalSpec& s) {
  std::ostringstream os;
  os << "kind=" << to_string(s.kind) << ";dim=" << s.dim << ";seed=" << s.seed << ";params=";
  for (std::size_t i = 0; i < s.params.size(); ++i) {
    if (i) os << ',';
    os << format_g17(s.params[i]);
  }
  return os.str();
}

}  // namespace dads
