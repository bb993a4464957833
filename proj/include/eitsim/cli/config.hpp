#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "eitsim/channel.hpp"
#include "eitsim/errors.hpp"

namespace eitsim::cli {

class ConfigError : public ValidationError {
 public:
  ConfigError(const std::string& what, int line = 0, std::string key = {})
      : ValidationError(format(what, line, key)), line_(line), key_(std::move(key)) {}
  int line() const noexcept { return line_; }
  const std::string& key() const noexcept { return key_; }

 private:
  static std::string format(const std::string& what, int line, const std::string& key);
  int line_;
  std::string key_;
};

struct RunConfig {
  SchemeId scheme = SchemeId::A;
  std::vector<SchemeId> schemes;  // when set, commands run once per scheme

  double temp_k = 333.0;
  std::optional<double> pressure_torr;
  std::optional<double> pressure_a_torr;  // per-scheme pressures used when pressure_torr is unset
  std::optional<double> pressure_b_torr;
  double density_cm3 = 2.5e11;
  double cell_length_cm = 1.0;
  double beam_width_mm = 2.0;
  double beam_height_mm = 2.0;

  std::optional<double> pump_power_mw = 1.0;
  std::optional<double> pump_rabi_mhz;
  double pump_detuning_mhz = 0.0;
  double bz_gauss = 0.0;
  double gradient_gauss_per_mm = 0.0;

  DopplerMethod doppler_method = DopplerMethod::Exact;
  int doppler_min_nodes = 64;
  double doppler_rel_tol = 1.0e-3;
  double fd_step_fraction = 1.0 / 200.0;
  FieldAverageMethod field_average = FieldAverageMethod::Exact;
  int field_nodes = 32;
  double linear_tolerance = 0.1;
  unsigned threads = 0;

  double chi_start_mhz = -5.0;
  double chi_stop_mhz = 5.0;
  int chi_points = 401;
  std::vector<double> chi_pressures_torr;
  std::vector<double> gradient_values_gauss_per_mm;

  std::optional<double> optical_density;
  std::optional<double> pulse_tau_us;
  double pulse_tau_over_beta = 10.0;
  double pulse_carrier_offset_mhz = 0.0;
  bool pulse_include_c_term = false;
  int pulse_curve_points = 2001;

  std::string sweep_axis;
  std::vector<double> sweep_values;

  std::string output_dir = "out";
  std::string preset;
};

// Baseline: T = 333 K, N = 2.5e11 cm^-3, 1 mW pump over (2 mm)^2, 1 cm cell,
// Scheme A at 2 Torr.
RunConfig default_config();

// Parses a key = value document on top of `base`. Lines may carry # comments;
// [section] headers prefix the following keys with "section.".
RunConfig parse_config(std::string_view text, RunConfig base = default_config());

// Applies one "key=value" override.
void apply_override(RunConfig& cfg, std::string_view assignment);
void set_value(RunConfig& cfg, const std::string& key, std::string_view value, int line = 0);

// Canonical key names and their current values, in a fixed order.
std::vector<std::pair<std::string, std::string>> describe(const RunConfig& cfg);
std::vector<std::string> known_keys();

// Resolved physical inputs for one scheme.
double resolved_pressure(const RunConfig& cfg, SchemeId scheme);
AtomicSystem build_system(const RunConfig& cfg, SchemeId scheme);
AtomicSystem build_system(const RunConfig& cfg, SchemeId scheme, double pressure_torr);
EnvironmentInputs environment_inputs(const RunConfig& cfg);
std::vector<SchemeId> active_schemes(const RunConfig& cfg);

SearchSettings search_settings(const RunConfig& cfg, unsigned threads);
GradientSettings gradient_settings(const RunConfig& cfg, unsigned threads);
ChannelSettings channel_settings(const RunConfig& cfg, unsigned threads);

std::vector<double> parse_number_list(std::string_view text);
std::string canonical_axis(std::string_view axis);

void validate(const RunConfig& cfg);

}  // namespace eitsim::cli
