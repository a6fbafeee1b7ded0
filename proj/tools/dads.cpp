#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <thread>

#include "dads/config.hpp"
#include "dads/sweep.hpp"

namespace {

std::filesystem::path output_dir(const std::string& flag) {
  if (const char* env = std::getenv("DADS_OUT"); env != nullptr && *env != '\0') return env;
  return flag;
}

void print_report(const dads::VerificationReport& r) {
  std::printf("%-24s %-12s %-14s %s\n", "check", "category", "status", "worst_margin");
  for (const auto& c : r.records) {
    std::printf("%-24s %-12s %-14s %s\n", c.id.c_str(), c.category.c_str(), dads::to_string(c.status),
                dads::format_g17(c.worst_margin).c_str());
  }
  if (r.aborted) std::printf("aborted: %s\n", r.abort_reason.c_str());
  std::printf("overall: %s\n", r.overall_pass() ? "pass" : "fail");
}

int run(const std::string& config, const std::filesystem::path& out, bool write) {
  const auto scenario = dads::load_scenario(config);
  const auto res = dads::run_scenario(scenario);
  if (write) {
    const auto paths = dads::export_csv(res.trajectory, res.report, out);
    std::printf("wrote %s\nwrote %s\n", paths.csv.string().c_str(), paths.report.string().c_str());
  }
  print_report(res.report);
  return dads::exit_code(dads::outcome_of(res.report));
}

int check_assumption(const std::string& config) {
  const auto scenario = dads::load_scenario(config);
  if (!scenario.plant.bundle) throw dads::ConfigError("check-assumption-a needs a plant with a certificate bundle");
  const auto report = dads::check_assumption_a(*scenario.plant.bundle);
  std::printf("%-22s %-24s %-8s %s\n", "inequality", "min_slack", "points", "status");
  for (const auto& row : report.rows) {
    std::printf("%-22s %-24s %-8zu %s\n", row.name.c_str(), dads::format_g17(row.min_slack).c_str(), row.points,
                row.passed ? "pass" : "fail");
    if (row.error) std::printf("  error: %s\n", row.error->c_str());
  }
  return report.passed() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Adaptive regulation with a deadzone: simulation and verification harness"};
  app.require_subcommand(1);
  std::string out_flag = "out";
  app.add_option("--out", out_flag, "Output directory (DADS_OUT overrides)");

  std::string config;
  auto* simulate = app.add_subcommand("simulate", "Run a scenario and write CSV and report files");
  simulate->add_option("config", config, "Scenario config file")->required();
  auto* verify = app.add_subcommand("verify", "Run a scenario; exit 0 iff every check passes");
  verify->add_option("config", config, "Scenario config file")->required();
  auto* assumption = app.add_subcommand("check-assumption-a", "Grid-check the bundle inequalities of a scenario");
  assumption->add_option("config", config, "Scenario config file")->required();

  double p = 1, c = 1, a = 1, b = 1, epsilon = 0.1, gamma_rate = 1;
  auto* constants = app.add_subcommand("constants", "Print kappa, Kbar, Bbar for the reaction-diffusion law");
  constants->add_option("--p", p)->required();
  constants->add_option("--c", c)->required();
  constants->add_option("--a", a)->required();
  constants->add_option("--b", b)->required();
  constants->add_option("--epsilon", epsilon)->required();
  constants->add_option("--gamma_rate", gamma_rate)->required();

  std::string dir;
  unsigned workers = std::max(1u, std::thread::hardware_concurrency());
  auto* sweep = app.add_subcommand("sweep", "Run every *.cfg in a directory and write a summary table");
  sweep->add_option("dir", dir, "Directory of scenario configs")->required();
  sweep->add_option("--workers", workers, "Worker threads")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    const auto out = output_dir(out_flag);
    if (*simulate) return run(config, out, true);
    if (*verify) return run(config, out, false);
    if (*assumption) return check_assumption(config);
    if (*constants) {
      const auto k = dads::reaction_diffusion_constants(p, c, a, b, epsilon, gamma_rate);
      std::printf("kappa = %s\nKbar = %s\nBbar = %s\n", dads::format_g17(k.kappa).c_str(),
                  dads::format_g17(k.Kbar).c_str(), dads::format_g17(k.Bbar).c_str());
      return 0;
    }
    if (*sweep) {
      const auto entries = dads::sweep(dads::list_configs(dir), out, workers);
      const auto table = dads::summary_table(entries);
      std::error_code ec;
      std::filesystem::create_directories(out, ec);
      std::FILE* f = std::fopen((out / "summary.txt").string().c_str(), "wb");
      if (f == nullptr) throw dads::Error("cannot write '" + (out / "summary.txt").string() + "'");
      std::fputs(table.c_str(), f);
      std::fclose(f);
      std::fputs(table.c_str(), stdout);
      int worst = 0;
      for (const auto& e : entries) worst = std::max(worst, dads::exit_code(e.outcome));
      return worst;
    }
  } catch (const dads::ConfigError& e) {
    std::fprintf(stderr, "configuration error: %s\n", e.what());
    return 2;
  } catch (const dads::DomainError& e) {
    std::fprintf(stderr, "invalid input: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  }
  return 0;
}
