#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "eitsim/cli/presets.hpp"
#include "eitsim/cli/runner.hpp"
#include "eitsim/parallel.hpp"

namespace {

std::string read_text(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw eitsim::cli::ConfigError("cannot read config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
  using namespace eitsim::cli;

  CLI::App app{"EIT susceptibility, slow-light and channelization simulator"};
  app.set_version_flag("--version", std::string(EITSIM_VERSION));

  std::string command;
  std::string config_file;
  std::vector<std::string> overrides;
  std::string out_dir;
  std::string preset_name;
  int threads = 0;
  std::string axis;
  std::string values;
  bool list_keys = false;
  bool list_presets = false;

  std::string commands_help = "run";
  for (const auto& c : command_names()) commands_help += "|" + c;
  app.add_option("command", command, commands_help);
  app.add_option("--config", config_file, "key = value config document");
  app.add_option("--set", overrides, "override one key (key=value)")->take_all();
  app.add_option("--out", out_dir, "output directory");
  app.add_option("--preset", preset_name, "figure preset");
  app.add_option("--threads", threads, "worker threads (EITSIM_THREADS otherwise)")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--axis", axis, "sweep axis: p, S_B, B_z or D");
  app.add_option("--values", values, "sweep values, a..b[:step] or a,b,c");
  app.add_flag("--list-keys", list_keys, "print the config keys and exit");
  app.add_flag("--list-presets", list_presets, "print the figure presets and exit");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (list_keys) {
      for (const auto& k : known_keys()) std::cout << k << "\n";
      return 0;
    }
    if (list_presets) {
      for (const auto& name : preset_names()) {
        const Preset p = preset(name);
        std::cout << name << "\t" << p.command << "\t" << p.description << "\n";
      }
      return 0;
    }
    if (command.empty()) throw ConfigError("a command is required (" + commands_help + ")");

    RunConfig cfg = default_config();
    if (!preset_name.empty()) {
      Preset p = preset(preset_name);
      cfg = p.config;
      if (command == "run") command = p.command;
    } else if (command == "run") {
      throw ConfigError("'run' needs --preset");
    }
    if (!config_file.empty()) cfg = parse_config(read_text(config_file), cfg);
    for (const auto& o : overrides) apply_override(cfg, o);
    if (!axis.empty()) cfg.sweep_axis = canonical_axis(axis);
    if (!values.empty()) cfg.sweep_values = parse_number_list(values);
    if (!out_dir.empty()) cfg.output_dir = out_dir;

    const unsigned n = eitsim::resolve_thread_count(threads > 0 ? threads : cfg.threads);
    const RunResult r = run_command(command, cfg, n);
    for (const auto& a : r.artifacts) std::cout << cfg.output_dir << "/" << a << "\n";
    std::cout << cfg.output_dir << "/" << r.manifest << "\n";
    if (r.failed_points > 0)
      std::cerr << "warning: " << r.failed_points << " sweep point(s) failed; see the CSV status column\n";
    return 0;
  } catch (const eitsim::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const eitsim::PhysicsError& e) {
    std::cerr << "physics error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
