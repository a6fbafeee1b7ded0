#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "dads/verification.hpp"

namespace dads {

enum class RunOutcome { pass, check_failure, config_error, aborted };
const char* to_string(RunOutcome o);
/// CLI exit code for an outcome: 0 pass, 1 check failure, 2 config error, 3 abort.
int exit_code(RunOutcome o);
RunOutcome outcome_of(const VerificationReport& report);

struct SweepEntry {
  std::filesystem::path config;
  std::string scenario;
  RunOutcome outcome = RunOutcome::pass;
  std::size_t failed_checks = 0;
  std::string message;
};

/// Scenario configs (*.cfg) in `dir`, sorted by file name.
std::vector<std::filesystem::path> list_configs(const std::filesystem::path& dir);

/// Runs every config concurrently on at most `workers` threads, exporting each
/// run into out_dir. Entries come back in config order.
std::vector<SweepEntry> sweep(const std::vector<std::filesystem::path>& configs, const std::filesystem::path& out_dir,
                              unsigned workers);

std::string summary_table(const std::vector<SweepEntry>& entries);

}  // namespace dads
