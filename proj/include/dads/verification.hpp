#pragma once

#include <filesystem>

#include "dads/integrator.hpp"

namespace dads {

enum class CheckStatus { pass, fail, inconclusive, skipped };
const char* to_string(CheckStatus s);

struct CheckRecord {
  std::string id;
  std::string category;     // regulation | estimate | dissipation
  CheckStatus status = CheckStatus::pass;
  double worst_margin = 0.0;  // bound minus observed; negative means violated
  double time_of_worst = 0.0;
  double observed = 0.0;      // the extreme observed value behind the margin
  std::string note;
};

struct VerificationReport {
  std::string scenario;
  bool aborted = false;
  std::string abort_reason;
  std::vector<CheckRecord> records;

  /// No enabled check failed and the run was not aborted. Inconclusive and
  /// skipped checks do not fail a report.
  bool overall_pass() const;
  const CheckRecord* find(const std::string& id) const;
};

/// Regulation, gain settling and boundedness checks for the general law.
std::vector<CheckRecord> verify_regulation(const Trajectory& traj, const Scenario& scenario);

/// Energy bound, gain bound, and tail bounds on |w| and |y| for the reaction-diffusion law.
std::vector<CheckRecord> verify_estimates(const Trajectory& traj, const Scenario& scenario,
                                          const ReactionDiffusionConstants& consts);

/// Centered-difference dissipation monitors along a pde-law trajectory:
/// monitor-phi, monitor-v, monitor-u, monitor-v-gain.
std::vector<CheckRecord> monitor_dissipation(const Trajectory& traj, const Scenario& scenario);

struct RunResult {
  Trajectory trajectory;
  VerificationReport report;
};

/// Validates, simulates and runs every enabled check. ConfigError propagates.
RunResult run_scenario(const Scenario& scenario);

/// Trajectory CSV text (17 significant digits).
std::string trajectory_csv(const Trajectory& traj);
/// Flat key = value report text.
std::string report_text(const VerificationReport& report);

struct ExportPaths {
  std::filesystem::path csv;
  std::filesystem::path report;
};

/// Writes <dir>/<name>.csv and <dir>/<name>.report.txt; throws Error naming the path on I/O failure.
ExportPaths export_csv(const Trajectory& traj, const VerificationReport& report, const std::filesystem::path& dir);

}  // namespace dads
