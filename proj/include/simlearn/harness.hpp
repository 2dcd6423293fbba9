#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "simlearn/serialize.hpp"

namespace simlearn {

inline constexpr int kExitOk = 0;
inline constexpr int kExitThreshold = 2;   // selftest criterion failed
inline constexpr int kExitConfig = 64;     // schema violation
inline constexpr int kExitResource = 70;   // materialization / sample cap

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

/// The verification battery: acceptance checks A1..A10 plus the per-module
/// property suites. `filter` is a substring match on check names; empty runs
/// everything. Each check is deterministic (fixed seeds).
std::vector<CheckResult> run_selftest(const std::string& filter = "");

/// Executes the preset, writing per-trial JSON reports (canonical field set,
/// no timestamps) and an aggregate CSV with wall-clock columns under
/// config.output_dir. Returns a process exit code.
int run_experiment(const ExperimentConfig& config, std::ostream& log);

/// Resolved parameters: derived step size, sample schedules, link constants.
std::string describe(const ExperimentConfig& config);

}  // namespace simlearn
