#include "dads/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <sstream>
#include <thread>

#include "dads/config.hpp"

namespace dads {

const char* to_string(RunOutcome o) {
  switch (o) {
    case RunOutcome::pass: return "pass";
    case RunOutcome::check_failure: return "fail";
    case RunOutcome::config_error: return "config-error";
    case RunOutcome::aborted: return "aborted";
  }
  return "unknown";
}

int exit_code(RunOutcome o) {
  switch (o) {
    case RunOutcome::pass: return 0;
    case RunOutcome::check_failure: return 1;
    case RunOutcome::config_error: return 2;
    case RunOutcome::aborted: return 3;
  }
  return 1;
}

RunOutcome outcome_of(const VerificationReport& report) {
  if (report.aborted) return RunOutcome::aborted;
  return report.overall_pass() ? RunOutcome::pass : RunOutcome::check_failure;
}

std::vector<std::filesystem::path> list_configs(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::directory_iterator it(dir, ec);
  if (ec) throw ConfigError("cannot read directory '" + dir.string() + "': " + ec.message());
  std::vector<std::filesystem::path> out;
  for (const auto& entry : it) {
    if (entry.is_regular_file() && entry.path().extension() == ".cfg") out.push_back(entry.path());
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

SweepEntry run_one(const std::filesystem::path& path, const std::filesystem::path& out_dir) {
  SweepEntry e;
  e.config = path;
  e.scenario = path.stem().string();
  try {
    const Scenario s = load_scenario(path);
    e.scenario = s.name;
    const auto res = run_scenario(s);
    export_csv(res.trajectory, res.report, out_dir);
    e.outcome = outcome_of(res.report);
    e.failed_checks = static_cast<std::size_t>(std::count_if(
        res.report.records.begin(), res.report.records.end(),
        [](const CheckRecord& r) { return r.status == CheckStatus::fail; }));
    if (res.report.aborted) e.message = res.report.abort_reason;
  } catch (const ConfigError& err) {
    e.outcome = RunOutcome::config_error;
    e.message = err.what();
  } catch (const std::exception& err) {
    e.outcome = RunOutcome::aborted;
    e.message = err.what();
  }
  return e;
}

}  // namespace

std::vector<SweepEntry> sweep(const std::vector<std::filesystem::path>& configs, const std::filesystem::path& out_dir,
                              unsigned workers) {
  std::vector<SweepEntry> results(configs.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < configs.size(); i = next++) results[i] = run_one(configs[i], out_dir);
  };
  const unsigned n = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(configs.size())));
  std::vector<std::jthread> pool;
  for (unsigned i = 0; i < n; ++i) pool.emplace_back(work);
  pool.clear();
  return results;
}

std::string summary_table(const std::vector<SweepEntry>& entries) {
  std::size_t width = 8;
  for (const auto& e : entries) width = std::max(width, e.scenario.size());
  std::ostringstream os;
  auto pad = [&](const std::string& s) { return s + std::string(width - s.size() + 2, ' '); };
  os << pad("scenario") << "outcome       failed  config\n";
  for (const auto& e : entries) {
    std::string outcome = to_string(e.outcome);
    outcome.resize(14, ' ');
    std::string failed = std::to_string(e.failed_checks);
    failed.resize(8, ' ');
    os << pad(e.scenario) << outcome << failed << e.config.filename().string();
    if (!e.message.empty()) os << "  (" << e.message << ')';
    os << '\n';
  }
  return os.str();
}

}  // namespace dads
