#pragma once

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>

#include "bec2/config.hpp"

namespace bec2 {

struct CommandOptions {
  std::filesystem::path out_dir;
  int jobs = 1;                      // sweep parallelism
  std::function<bool()> cancelled;   // polled between steps / sweep points
};

// Each command writes resolved_config.json, its outputs, summary.json and a
// manifest into opts.out_dir, and returns the process exit code (see
// ExitCode). Hard failures propagate as bec2::Error subclasses; per-row
// singularities inside tables and sweeps are flagged, not thrown.
int run_index(const RunConfig& cfg, const CommandOptions& opts);
int run_chi(const RunConfig& cfg, const CommandOptions& opts);
int run_diffract(const RunConfig& cfg, const CommandOptions& opts);
int run_simulate(const RunConfig& cfg, const CommandOptions& opts);
int run_sweep(const RunConfig& cfg, const CommandOptions& opts);

// Dispatch by subcommand name (index, chi, diffract, simulate, sweep).
int run_command(const std::string& name, const RunConfig& cfg, const CommandOptions& opts);

// Runs the acceptance checks, streaming one line per criterion to `log`.
// Writes report.json when out_dir is given. Returns 0 iff all passed.
int run_validate(const std::optional<std::filesystem::path>& out_dir, std::ostream& log);

}  // namespace bec2
