#include <doctest.h>

#include "dads/signals.hpp"

using namespace dads;

TEST_CASE("eval_signal examples") {
  CHECK(eval_signal(SignalSpec::zero(3), 3.7) == Vec{0.0, 0.0, 0.0});
  CHECK(eval_signal(SignalSpec::constant({5.0}), 10.0) == Vec{5.0});
  CHECK(eval_signal(SignalSpec::sinusoid(0.5, 1.0), kPi / 2)[0] == doctest::Approx(0.5).epsilon(1e-15));
  CHECK_THROWS_AS(eval_signal(SignalSpec::constant({1.0}), -1e-9), DomainError);
}

TEST_CASE("sup norm examples") {
  CHECK(signal_sup_norm(SignalSpec::zero(2)) == 0.0);
  CHECK(signal_sup_norm(SignalSpec::constant({-3.0})) == 3.0);

  SignalSpec two{1, SignalKind::sinusoid_sum, {1.0, 0.5, 1.0, 0.0, 0.25, 5.0, 0.0}, 0};
  CHECK(signal_sup_norm(two) == 0.75);
  // Dense sampling reaches the analytic value (both terms peak at t = pi/2).
  double best = 0.0;
  for (int i = 0; i <= 200000; ++i) best = std::max(best, std::abs(eval_signal(two, 2 * kPi * i / 200000.0)[0]));
  CHECK(best == doctest::Approx(0.75).epsilon(1e-6));
}

TEST_CASE("piecewise constant is right-continuous") {
  SignalSpec s{1, SignalKind::piecewise_constant, {3.0, 1.0, 2.0, 4.0, -7.0, 1.5}, 0};
  validate(s);
  CHECK(eval_signal(s, 0.5)[0] == 4.0);
  CHECK(eval_signal(s, 1.0)[0] == -7.0);
  CHECK(eval_signal(s, 2.0)[0] == 1.5);
  CHECK(signal_sup_norm(s) == 7.0);
  CHECK_FALSE(is_time_invariant(s));
}

TEST_CASE("decaying exponential vanishes") {
  SignalSpec s{2, SignalKind::decaying_exponential, {0.5, 3.0, 4.0}, 0};
  CHECK(signal_sup_norm(s) == doctest::Approx(5.0));
  CHECK(norm2(eval_signal(s, 200.0)) < 1e-40);
}

TEST_CASE("malformed specs are configuration errors") {
  CHECK_THROWS_AS(validate(SignalSpec{1, SignalKind::constant, {1.0, 2.0}, 0}), ConfigError);
  CHECK_THROWS_AS(validate(SignalSpec{1, SignalKind::decaying_exponential, {-1.0, 2.0}, 0}), ConfigError);
  CHECK_THROWS_AS(validate(SignalSpec{1, SignalKind::piecewise_constant, {2.0, 1.0, 0.0}, 0}), ConfigError);
}

TEST_CASE("seeded constructor") {
  for (auto kind : {SignalKind::constant, SignalKind::sinusoid_sum, SignalKind::piecewise_constant,
                    SignalKind::decaying_exponential, SignalKind::zero}) {
    const auto z = make_seeded_bounded(1, 1, 0.0, kind);
    for (double t : {0.0, 0.3, 17.0}) CHECK(eval_signal(z, t) == Vec{0.0});
  }
  CHECK(serialize(make_seeded_bounded(42, 2, 1.0, SignalKind::sinusoid_sum)) ==
        serialize(make_seeded_bounded(42, 2, 1.0, SignalKind::sinusoid_sum)));
  CHECK(make_seeded_bounded(42, 2, 1.0, SignalKind::sinusoid_sum).params !=
        make_seeded_bounded(43, 2, 1.0, SignalKind::sinusoid_sum).params);
}

TEST_CASE("property: evaluation never exceeds the sup norm") {
  SplitMix64 rng(2024);
  const SignalKind kinds[] = {SignalKind::constant, SignalKind::sinusoid_sum, SignalKind::piecewise_constant,
                              SignalKind::decaying_exponential};
  for (int c = 0; c < 40; ++c) {
    const auto kind = kinds[c % 4];
    const int dim = 1 + static_cast<int>(rng.next() % 3);
    const double bound = rng.uniform(0.0, 10.0);
    const auto spec = make_seeded_bounded(rng.next(), dim, bound, kind);
    const double sup = signal_sup_norm(spec);
    CHECK(sup <= bound * (1 + 1e-15));
    SplitMix64 times(c);
    for (int i = 0; i < 10000; ++i) {
      const double t = times.uniform(0.0, 100.0);
      const Vec v = eval_signal(spec, t);
      REQUIRE(norm2(v) <= sup + 1e-12);
      REQUIRE(eval_signal(spec, t) == v);
    }
  }
}

TEST_CASE("counter generator is a pure function of the index") {
  SplitMix64 a(9), b(9);
  const auto first = a.next();
  a.next();
  CHECK(b.at(0) == first);
  CHECK(a.at(1) == b.at(1));
  CHECK(a.split(1).at(0) != a.split(2).at(0));
  for (int i = 0; i < 1000; ++i) {
    const double u = b.uniform();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
  }
}
