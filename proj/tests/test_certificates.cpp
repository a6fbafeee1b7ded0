#include <doctest.h>

#include "dads/certificates.hpp"
#include "dads/plants.hpp"
#include "dads/polynomial.hpp"
#include "dads/signals.hpp"

using namespace dads;

namespace {

bool has_violation(const ValidationResult& r, const std::string& name) {
  return std::find(r.violations.begin(), r.violations.end(), name) != r.violations.end();
}

DadsParams chi_params() {
  DadsParams p;
  p.a = 0.5;
  p.beta = 0.5;
  p.b = 1.0;
  p.r = 1.0;
  return p;
}

}  // namespace

TEST_CASE("scalar class functions") {
  const auto pw = ScalarClassFunction::power(2.0, 1.5);
  CHECK(pw(4.0) == doctest::Approx(16.0));
  CHECK(pw.flags().is_Kinfinity);
  CHECK(pw(pw.inverse(3.7)) == doctest::Approx(3.7).epsilon(1e-12));
  pw.validate();

  const auto sat = ScalarClassFunction::saturating(3.0);
  CHECK(sat.flags().is_K);
  CHECK_FALSE(sat.flags().is_Kinfinity);
  CHECK_THROWS_AS(sat.inverse(1.0), ContractError);

  const auto one = ScalarClassFunction::constant(1.0);
  CHECK(one.flags().is_nondecreasing);
  CHECK_FALSE(one.flags().is_K);

  const auto parsed = ScalarClassFunction::parse("sum-of-powers 1 1 0.5 3");
  CHECK(parsed(2.0) == doctest::Approx(6.0));
  CHECK(parsed(parsed.inverse(10.0)) == doctest::Approx(10.0).epsilon(1e-12));
  CHECK_THROWS_AS(ScalarClassFunction::parse("cubic 1"), ConfigError);

  const auto custom = ScalarClassFunction::custom([](double s) { return s * s; }, {true, true, true});
  CHECK(custom(3.0) == 9.0);
  CHECK_THROWS_AS(custom.inverse(1.0), ContractError);
}

TEST_CASE("polynomial parsing and calculus") {
  const auto k = Polynomial::parse("-y - y^3");
  CHECK(k(1.0) == -2.0);
  CHECK(k.derivative(0)(2.0) == -13.0);
  const auto mixed = Polynomial::parse("2*y^2*w + delta");
  CHECK(mixed(3.0, 0.5, 1.0) == 10.0);
  CHECK(mixed.depends_on(2));
  CHECK_FALSE(k.depends_on(1));
  CHECK_THROWS_AS(Polynomial::parse("y^"), ConfigError);
}

TEST_CASE("check_params examples") {
  CHECK(check_params(DadsParams{0.1, 1, 1, 0.25, 1, 1, 1}).ok());
  auto bad = DadsParams{0.1, 1, 1, 1.0, 1, 1, 1};
  CHECK(has_violation(check_params(bad), "2a*beta < b*r"));
  bad = DadsParams{0.1, 1, 0.0, 0.25, 1, 1, 1};
  CHECK(has_violation(check_params(bad), "a in (0,1]"));
  bad = DadsParams{0.1, 0.0, 1, 0.25, 0.5, 1, 1};
  const auto r = check_params(bad);
  CHECK(has_violation(r, "Gamma > 0"));
  CHECK(has_violation(r, "b >= 1"));
}

TEST_CASE("chi examples") {
  const auto gamma = ScalarClassFunction::constant(1.0);
  const auto P = chi_params();
  CHECK(chi(0, 0, 0, 0, P, gamma, 0.0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(chi(1, 0, 3, 0, P, gamma, 0.0) == doctest::Approx(11.5).epsilon(1e-15));
  CHECK(chi(0, 0, 2, 5, P, gamma, 0.0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK_THROWS_AS(chi(-1, 0, 0, 0, P, gamma, 0.0), DomainError);
}

TEST_CASE("property: chi monotonicity") {
  const auto gamma = ScalarClassFunction::power(1.0, 2.0);
  const auto P = chi_params();
  SplitMix64 rng(11);
  for (int i = 0; i < 1000; ++i) {
    double s[4];
    for (double& v : s) v = rng.uniform(0.0, 5.0);
    const double base = chi(s[0], s[1], s[2], s[3], P, gamma, 0.3);
    const double step = rng.uniform(0.0, 1.0);
    REQUIRE(chi(s[0] + step, s[1], s[2], s[3], P, gamma, 0.3) >= base);
    REQUIRE(chi(s[0], s[1] + step, s[2], s[3], P, gamma, 0.3) >= base);
    REQUIRE(chi(s[0], s[1], s[2] + step, s[3], P, gamma, 0.3) >= base);
    REQUIRE(chi(s[0], s[1], s[2], s[3] + step, P, gamma, 0.3) <= base);
    if (s[2] <= P.b + s[3]) {
      REQUIRE(chi(0, s[1], s[2], s[3], P, gamma, 0.0) == doctest::Approx(0.5 * gamma(s[1])).epsilon(1e-14));
    }
  }
}

TEST_CASE("c_epsilon examples") {
  const auto id = ScalarClassFunction::power(1.0, 1.0);
  CHECK(c_epsilon(id, 1.0, 0.4) == 1.0);
  CHECK(c_epsilon(id, 1.0, 1.0) == 1.0);
  const double tenth = c_epsilon(ScalarClassFunction::power(0.1, 1.0), 1.0, 2.0);
  CHECK(tenth <= 2.0 / 15.0);
  CHECK(tenth == doctest::Approx(2.0 / 15.0).epsilon(2e-6));
  CHECK_THROWS_AS(c_epsilon(ScalarClassFunction::saturating(1.0), 1.0, 2.0), ContractError);
}

TEST_CASE("property: c_epsilon is positive, non-increasing and below rho") {
  SplitMix64 rng(5);
  for (int c = 0; c < 20; ++c) {
    const auto rho = ScalarClassFunction::power(rng.uniform(0.05, 3.0), rng.uniform(0.5, 3.0));
    const double eps = rng.uniform(0.05, 2.0);
    double previous = 1.0;
    for (int i = 1; i <= 50; ++i) {
      const double tau = 0.2 * eps * i;
      const double ce = c_epsilon(rho, eps, tau);
      REQUIRE(ce > 0.0);
      // Past the minimiser the infimum is flat; repeated minimisations agree to rounding.
      REQUIRE(ce <= previous * (1.0 + 1e-12));
      REQUIRE(ce * positive_part(tau - eps / 2) <= rho(tau));
      previous = ce;
    }
  }
}

TEST_CASE("decay_lemma_bound examples") {
  const auto id = ScalarClassFunction::power(1.0, 1.0);
  CHECK(decay_lemma_bound(3.3, 1.0, 1.0, 0.0, 0.7, id) == 3.3);
  CHECK(decay_lemma_bound(2.0, 1000.0, 0.0, 0.0, 1.0, id) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(decay_lemma_bound(2.0, 1.0, 0.0, 0.5, 1.0, id) == doctest::Approx(2 * std::exp(-1.0) + 1.0).epsilon(1e-14));
  CHECK_THROWS_AS(decay_lemma_bound(2.0, 0.5, 1.0, 0.0, 1.0, id), DomainError);
}

TEST_CASE("reaction_diffusion_constants examples") {
  const auto k = reaction_diffusion_constants(1, 1, 1, 1, 1, 1);
  CHECK(k.kappa == 2.0);
  // Pinned from the hand-simplified forms 1 + pi^2 + 1/(8 pi^2) and (3 Kbar + 1)/4.
  CHECK(k.Kbar == doctest::Approx(10.8822695490446).epsilon(1e-12));
  CHECK(k.Bbar == doctest::Approx(8.41170216178348).epsilon(1e-12));
  CHECK(reaction_diffusion_constants(0.1, 5, 1, 1, 1, 1).kappa == doctest::Approx(0.1 * kPi * kPi / 2).epsilon(1e-15));
  CHECK_THROWS_AS(reaction_diffusion_constants(1, 1, 1, 0.5, 1, 1), DomainError);
  CHECK_THROWS_AS(reaction_diffusion_constants(1, 0.5, 1, 1, 1, 1), DomainError);
  CHECK_THROWS_AS(reaction_diffusion_constants(1, 1, 1.5, 1, 1, 1), DomainError);
}

TEST_CASE("worked-example bundle passes the certificate checks") {
  const auto b = worked_example_bundle();
  CHECK(check_bundle(b).ok());
  const auto report = check_assumption_a(b);
  REQUIRE(report.rows.size() == 4);
  for (const auto& row : report.rows) {
    CHECK_MESSAGE(row.min_slack >= -kAssumptionSlackTolerance, row.name);
    CHECK(row.points <= 10000);
  }
  CHECK(report.passed());
  // Equality cases: the closed-loop decrease and coupling sensitivity are tight.
  CHECK(std::abs(report.rows[0].min_slack) < 1e-9);
  CHECK(std::abs(report.rows[2].min_slack) < 1e-9);
}

TEST_CASE("a broken certificate is caught") {
  auto b = worked_example_bundle();
  b.k = [](const Vec& y) { return -0.5 * y[0]; };
  const auto report = check_assumption_a(b);
  CHECK_FALSE(report.passed());
  CHECK_FALSE(report.rows[0].passed);

  auto g = worked_example_bundle();
  g.gradV = [](const Vec& y) { return Vec{2.0 * y[0]}; };
  CHECK_FALSE(check_bundle(g).ok());
}

TEST_CASE("box grid") {
  const AssumptionGrid grid;
  const auto pts1 = box_grid(1, grid, 10000);
  CHECK(pts1.size() >= 21);
  const auto pts3 = box_grid(3, grid, 10000);
  CHECK(pts3.size() <= 10000 + 3 * 21 + 1);
  bool has_origin = false;
  for (const auto& p : pts3) has_origin |= (p == Vec{0.0, 0.0, 0.0});
  CHECK(has_origin);
}
