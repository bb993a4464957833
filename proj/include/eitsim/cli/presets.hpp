#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "eitsim/cli/config.hpp"

namespace eitsim::cli {

struct Preset {
  std::string name;
  std::string command;  // command the figure is produced with
  std::string description;
  RunConfig config;
};

// Throws ConfigError for an unknown name.
Preset preset(std::string_view name);
std::vector<std::string> preset_names();

}  // namespace eitsim::cli
