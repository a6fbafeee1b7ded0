#include <doctest.h>

#include <fstream>

#include "dads/config.hpp"
#include "dads/sweep.hpp"
#include "scenarios.hpp"

using namespace dads;

namespace {

const char* kWorkedExample = R"(
name = we
plant.type = worked-example
plant.y0 = 2
plant.w0 = 2
controller.law = general
controller.epsilon = 0.1
controller.gamma_rate = 1
controller.a = 1
controller.beta = 0.25
controller.b = 1
controller.C = 1
theta.kind = constant
theta.params = 5
integrator.dt = 1e-3
integrator.t_end = 20
integrator.sample_every = 10
)";

std::string replace_line(std::string text, const std::string& key, const std::string& value) {
  const auto at = text.find(key + " =");
  REQUIRE(at != std::string::npos);
  const auto end = text.find('\n', at);
  return text.replace(at, end - at, key + " = " + value);
}

Scenario zero_pde(double t_end) {
  auto s = testing::pde_default_scenario();
  s.plant.w0_profile = InitialProfile::zero;
  s.plant.y0 = {0.0};
  s.theta = SignalSpec::zero(2);
  s.d = SignalSpec::zero(1);
  s.integrator.t_end = t_end;
  return s;
}

std::filesystem::path scratch(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("dads_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("config parsing") {
  const auto cfg = Config::parse("a = 1\n# note\nb.c = x, y  # trailing\nlist = 1, 2.5\n");
  CHECK(cfg.num("a") == 1.0);
  CHECK(cfg.str("b.c") == "x, y");
  CHECK(cfg.list("list") == Vec{1.0, 2.5});
  CHECK(cfg.num("missing", 4.0) == 4.0);
  CHECK_THROWS_AS(cfg.num("b.c"), ConfigError);
  CHECK_THROWS_AS(Config::parse("a = 1\na = 2\n"), ConfigError);
  CHECK_THROWS_AS(Config::parse("no equals sign\n"), ConfigError);
  const auto unused = Config::parse("a = 1\nb = 2\n");
  unused.num("a");
  CHECK_THROWS_AS(unused.reject_unused(), ConfigError);
}

TEST_CASE("scenario from config text") {
  const auto s = scenario_from_config(Config::parse(kWorkedExample));
  CHECK(s.name == "we");
  CHECK(s.controller.params.beta == 0.25);
  CHECK(eval_signal(s.theta, 0.0) == Vec{5.0});
  CHECK(s.plant.bundle.has_value());
  CHECK_THROWS_AS(scenario_from_config(Config::parse(std::string(kWorkedExample) + "typo.key = 1\n")), ConfigError);
}

TEST_CASE("gates refuse invalid hypotheses before simulation") {
  auto expect_refusal = [](const std::string& text, const std::string& fragment) {
    try {
      scenario_from_config(Config::parse(text));
      FAIL("accepted: " << fragment);
    } catch (const ConfigError& e) {
      CHECK_MESSAGE(std::string(e.what()).find(fragment) != std::string::npos, e.what());
    }
  };
  expect_refusal(replace_line(kWorkedExample, "controller.gamma_rate", "0"), "Gamma > 0");
  expect_refusal(replace_line(kWorkedExample, "controller.beta", "1"), "2a*beta < b*r");
  expect_refusal(replace_line(kWorkedExample, "controller.epsilon", "-1"), "epsilon > 0");
  expect_refusal(replace_line(kWorkedExample, "controller.C", "0.5"), "C >= 1");

  auto s = testing::pde_default_scenario();
  s.controller.params.b = 0.5;
  CHECK_THROWS_AS(validate_scenario(s), ConfigError);
  s = testing::pde_default_scenario();
  s.controller.c = 0.5;
  CHECK_THROWS_AS(validate_scenario(s), ConfigError);
  s = testing::pde_default_scenario();
  s.controller.law = ControlLaw::general;
  CHECK_THROWS_AS(validate_scenario(s), ConfigError);
}

TEST_CASE("worked example report") {
  auto s = testing::worked_example_scenario();
  s.integrator.t_end = 20.0;
  const auto res = run_scenario(s);
  const auto& r = res.report;
  CHECK_FALSE(r.aborted);
  for (const char* id : {"z-monotone", "deadzone-settling", "v-limsup"}) {
    REQUIRE(r.find(id) != nullptr);
    CHECK_MESSAGE(r.find(id)->status == CheckStatus::pass, id);
  }
  CHECK(r.find("regulation-alternative")->status == CheckStatus::skipped);
  CHECK(r.overall_pass());
}

TEST_CASE("short horizons are inconclusive, not failures") {
  auto s = testing::worked_example_scenario();
  s.integrator.t_end = 2.0;
  const auto r = run_scenario(s).report;
  CHECK(r.find("v-limsup")->status == CheckStatus::inconclusive);
  CHECK(r.find("z-monotone")->status == CheckStatus::pass);

  const auto p = run_scenario(zero_pde(0.1)).report;
  CHECK(p.find("w-tail")->status == CheckStatus::inconclusive);
  CHECK(p.find("y-tail")->status == CheckStatus::inconclusive);
  CHECK(p.find("energy-bound")->status == CheckStatus::pass);
  CHECK(p.find("gain-bound")->status == CheckStatus::pass);
  CHECK(p.overall_pass());
}

TEST_CASE("all-zero scenarios pass trivially and stay at the origin") {
  auto s = testing::worked_example_scenario();
  s.plant.y0 = {0.0};
  s.plant.w0 = {0.0};
  s.theta = SignalSpec::zero(1);
  s.integrator.t_end = 12.0;
  const auto res = run_scenario(s);
  CHECK(res.report.overall_pass());
  for (const auto& smp : res.trajectory.samples) REQUIRE(smp.y[0] == 0.0);

  const auto pde = run_scenario(zero_pde(5.0));
  CHECK(pde.report.overall_pass());
  for (const auto& rec : pde.report.records) {
    if (rec.category == "dissipation") {
      CHECK_MESSAGE(rec.status == CheckStatus::pass, rec.id);
      CHECK(rec.worst_margin >= 0.0);
    }
  }
}

TEST_CASE("report completeness: each enabled check exactly once with a finite margin") {
  for (const auto& s : {testing::worked_example_scenario(), zero_pde(3.0)}) {
    auto sc = s;
    sc.integrator.t_end = std::min(sc.integrator.t_end, 12.0);
    const auto r = run_scenario(sc).report;
    std::set<std::string> ids;
    for (const auto& rec : r.records) {
      CHECK(ids.insert(rec.id).second);
      CHECK(std::isfinite(rec.worst_margin));
    }
    CHECK(ids.size() == (sc.controller.law == ControlLaw::general ? 6 : 8));
  }
  auto off = zero_pde(1.0);
  off.verify.monitors = false;
  CHECK(run_scenario(off).report.records.size() == 4);
}

TEST_CASE("regulation alternative is evaluated for bundles with gamma(0) = Lambda = 0") {
  std::map<std::string, Polynomial> parts;
  for (auto [k, v] : std::map<std::string, std::string>{{"V", "0.5*y^2"}, {"k", "-y - y^3"}, {"mu", "2"},
                                                        {"Q", "y^2 + y^4"}, {"Phi", "0.5*w^2"}, {"R", "w^2"},
                                                        {"f", "0"}, {"g", "1"}, {"phi", "w"}, {"A", "0"},
                                                        {"h", "-w + y"}}) {
    parts[k] = Polynomial::parse(v);
  }
  auto s = testing::worked_example_scenario();
  s.plant.type = PlantType::polynomial;
  s.plant.bundle = polynomial_bundle(parts, ScalarClassFunction::power(1.0, 2.0), 1.0, 0.0);
  s.plant.y0 = {1.0};
  s.plant.w0 = {0.5};
  s.theta = SignalSpec::constant({3.0});
  s.integrator.t_end = 40.0;
  const auto r = run_scenario(s).report;
  const auto* alt = r.find("regulation-alternative");
  REQUIRE(alt != nullptr);
  CHECK(alt->status == CheckStatus::pass);
}

TEST_CASE("csv export") {
  Trajectory empty;
  CHECK(trajectory_csv(empty) == "t,y,norm_w,z,u,V,Phi,U,deadzone_active\n");
  empty.law = ControlLaw::pde;
  CHECK(trajectory_csv(empty) == "t,y,norm_w,z,u,V,Phi,U,deadzone_active,energy_bound\n");

  auto s = testing::pde_default_scenario();
  s.integrator.t_end = 2.0;
  const auto res = run_scenario(s);
  for (const auto& smp : res.trajectory.samples) {
    const double lhs = smp.norm_w * smp.norm_w + smp.y[0] * smp.y[0];
    REQUIRE(smp.energy_bound * (1.0 + s.verify.disc_tol) >= lhs);
  }
  const auto dir = scratch("export");
  const auto paths = export_csv(res.trajectory, res.report, dir);
  std::ifstream in(paths.report);
  std::string first;
  std::getline(in, first);
  CHECK(first == "scenario = pde_default");
  CHECK_THROWS_AS(export_csv(res.trajectory, res.report, paths.csv / "sub"), Error);
}

TEST_CASE("sweep keeps config order and classifies outcomes") {
  const auto dir = scratch("sweep_in");
  const auto out = scratch("sweep_out");
  auto write = [&](const std::string& file, const std::string& text) { std::ofstream(dir / file) << text; };
  write("b_bad.cfg", replace_line(kWorkedExample, "controller.beta", "1"));
  write("a_good.cfg", kWorkedExample);
  write("c_aborts.cfg", replace_line(kWorkedExample, "controller.gamma_rate", "1e4\ncontroller.z_max = 0.5"));
  write("ignored.txt", "not a config");
  const auto configs = list_configs(dir);
  REQUIRE(configs.size() == 3);
  const auto entries = sweep(configs, out, 3);
  CHECK(entries[0].outcome == RunOutcome::pass);
  CHECK(entries[1].outcome == RunOutcome::config_error);
  CHECK(entries[2].outcome == RunOutcome::aborted);
  CHECK(exit_code(entries[2].outcome) == 3);
  CHECK(exit_code(entries[1].outcome) == 2);
  const auto table = summary_table(entries);
  CHECK(table.find("a_good.cfg") < table.find("b_bad.cfg"));
  CHECK(std::filesystem::exists(out / "we.csv"));
}
