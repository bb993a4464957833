#pragma once

#include <string>
#include <vector>

#include "eitsim/cli/config.hpp"

namespace eitsim::cli {

struct RunResult {
  std::vector<std::string> artifacts;  // file names relative to the output directory
  std::string manifest;
  int failed_points = 0;
};

std::vector<std::string> command_names();

// Runs chi | resonance | pulse | gradient | channel | sweep and writes the data
// files plus manifest.json into cfg.output_dir. Sweeps record failed points
// instead of aborting.
RunResult run_command(const std::string& command, const RunConfig& cfg, unsigned threads);

}  // namespace eitsim::cli
