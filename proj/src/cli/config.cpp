#include "eitsim/cli/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <functional>
#include <sstream>

namespace eitsim::cli {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

std::string number_text(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string list_text(const std::vector<double>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    out += number_text(v[i]);
  }
  return out;
}

double parse_double(std::string_view text) {
  const std::string t = trim(text);
  double v = 0.0;
  const char* first = t.data();
  const char* last = t.data() + t.size();
  if (!t.empty() && *first == '+') ++first;
  const auto res = std::from_chars(first, last, v);
  if (t.empty() || res.ec != std::errc() || res.ptr != last || !std::isfinite(v))
    throw ConfigError("expected a number, got '" + t + "'");
  return v;
}

int parse_int(std::string_view text) {
  const double v = parse_double(text);
  if (v != std::floor(v) || std::abs(v) > 1.0e9) throw ConfigError("expected an integer, got '" + trim(text) + "'");
  return static_cast<int>(v);
}

bool parse_bool(std::string_view text) {
  const std::string t = trim(text);
  if (t == "true" || t == "1" || t == "yes" || t == "on") return true;
  if (t == "false" || t == "0" || t == "no" || t == "off") return false;
  throw ConfigError("expected a boolean, got '" + t + "'");
}

std::string unquote(std::string_view text) {
  std::string t = trim(text);
  if (t.size() >= 2 && ((t.front() == '"' && t.back() == '"') || (t.front() == '\'' && t.back() == '\'')))
    t = t.substr(1, t.size() - 2);
  return t;
}

double positive(double v, const char* what) {
  if (!(v > 0.0)) throw ConfigError(std::string(what) + " must be positive");
  return v;
}

double nonnegative(double v, const char* what) {
  if (!(v >= 0.0)) throw ConfigError(std::string(what) + " must be nonnegative");
  return v;
}

std::vector<double> increasing(std::vector<double> v, const char* what) {
  if (v.empty()) throw ConfigError(std::string(what) + " must not be empty");
  for (std::size_t i = 1; i < v.size(); ++i)
    if (!(v[i] > v[i - 1])) throw ConfigError(std::string(what) + " must be strictly increasing");
  return v;
}

std::string method_text(DopplerMethod m) {
  switch (m) {
    case DopplerMethod::Exact: return "exact";
    case DopplerMethod::Trapezoid: return "trapezoid";
    case DopplerMethod::GaussHermite: return "gauss_hermite";
  }
  return "exact";
}

std::string schemes_text(const std::vector<SchemeId>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    out += to_string(v[i]);
  }
  return out;
}

struct KeySpec {
  std::string name;
  std::vector<std::string> aliases;
  std::function<void(RunConfig&, std::string_view)> set;
  std::function<std::string(const RunConfig&)> get;
};

std::string optional_text(const std::optional<double>& v) { return v ? number_text(*v) : ""; }

const std::vector<KeySpec>& key_table() {
  static const std::vector<KeySpec> table = {
      {"scheme", {}, [](RunConfig& c, std::string_view v) { c.scheme = parse_scheme_id(unquote(v)); },
       [](const RunConfig& c) { return to_string(c.scheme); }},
      {"schemes", {},
       [](RunConfig& c, std::string_view v) {
         c.schemes.clear();
         std::stringstream ss{std::string(v)};
         std::string item;
         while (std::getline(ss, item, ',')) c.schemes.push_back(parse_scheme_id(unquote(item)));
         if (c.schemes.empty()) throw ConfigError("schemes must not be empty");
       },
       [](const RunConfig& c) { return schemes_text(c.schemes); }},
      {"temp_k", {}, [](RunConfig& c, std::string_view v) { c.temp_k = positive(parse_double(v), "temp_k"); },
       [](const RunConfig& c) { return number_text(c.temp_k); }},
      {"pressure_torr", {},
       [](RunConfig& c, std::string_view v) { c.pressure_torr = positive(parse_double(v), "pressure_torr"); },
       [](const RunConfig& c) { return optional_text(c.pressure_torr); }},
      {"pressure_a_torr", {},
       [](RunConfig& c, std::string_view v) { c.pressure_a_torr = positive(parse_double(v), "pressure_a_torr"); },
       [](const RunConfig& c) { return optional_text(c.pressure_a_torr); }},
      {"pressure_b_torr", {},
       [](RunConfig& c, std::string_view v) { c.pressure_b_torr = positive(parse_double(v), "pressure_b_torr"); },
       [](const RunConfig& c) { return optional_text(c.pressure_b_torr); }},
      {"density_cm3", {},
       [](RunConfig& c, std::string_view v) { c.density_cm3 = nonnegative(parse_double(v), "density_cm3"); },
       [](const RunConfig& c) { return number_text(c.density_cm3); }},
      {"cell.length_cm", {"cell_length_cm"},
       [](RunConfig& c, std::string_view v) { c.cell_length_cm = positive(parse_double(v), "cell.length_cm"); },
       [](const RunConfig& c) { return number_text(c.cell_length_cm); }},
      {"beam.width_mm", {"beam_width_mm"},
       [](RunConfig& c, std::string_view v) { c.beam_width_mm = positive(parse_double(v), "beam.width_mm"); },
       [](const RunConfig& c) { return number_text(c.beam_width_mm); }},
      {"beam.height_mm", {"beam_height_mm"},
       [](RunConfig& c, std::string_view v) { c.beam_height_mm = positive(parse_double(v), "beam.height_mm"); },
       [](const RunConfig& c) { return number_text(c.beam_height_mm); }},
      {"pump.power_mw", {"pump_power_mw"},
       [](RunConfig& c, std::string_view v) {
         c.pump_power_mw = positive(parse_double(v), "pump.power_mw");
         c.pump_rabi_mhz.reset();
       },
       [](const RunConfig& c) { return optional_text(c.pump_power_mw); }},
      {"pump.rabi_mhz", {"pump_rabi_mhz"},
       [](RunConfig& c, std::string_view v) {
         c.pump_rabi_mhz = nonnegative(parse_double(v), "pump.rabi_mhz");
         c.pump_power_mw.reset();
       },
       [](const RunConfig& c) { return optional_text(c.pump_rabi_mhz); }},
      {"pump.detuning_mhz", {"pump_detuning_mhz"},
       [](RunConfig& c, std::string_view v) { c.pump_detuning_mhz = parse_double(v); },
       [](const RunConfig& c) { return number_text(c.pump_detuning_mhz); }},
      {"bz_gauss", {}, [](RunConfig& c, std::string_view v) { c.bz_gauss = parse_double(v); },
       [](const RunConfig& c) { return number_text(c.bz_gauss); }},
      {"gradient_gauss_per_mm", {},
       [](RunConfig& c, std::string_view v) {
         c.gradient_gauss_per_mm = nonnegative(parse_double(v), "gradient_gauss_per_mm");
       },
       [](const RunConfig& c) { return number_text(c.gradient_gauss_per_mm); }},
      {"numerics.doppler_method", {},
       [](RunConfig& c, std::string_view v) {
         const std::string t = unquote(v);
         if (t == "exact") c.doppler_method = DopplerMethod::Exact;
         else if (t == "trapezoid") c.doppler_method = DopplerMethod::Trapezoid;
         else if (t == "gauss_hermite") c.doppler_method = DopplerMethod::GaussHermite;
         else throw ConfigError("doppler_method must be exact, trapezoid or gauss_hermite");
       },
       [](const RunConfig& c) { return method_text(c.doppler_method); }},
      {"numerics.doppler_min_nodes", {},
       [](RunConfig& c, std::string_view v) {
         c.doppler_min_nodes = parse_int(v);
         if (c.doppler_min_nodes < 16) throw ConfigError("doppler_min_nodes must be at least 16");
       },
       [](const RunConfig& c) { return std::to_string(c.doppler_min_nodes); }},
      {"numerics.doppler_rel_tol", {},
       [](RunConfig& c, std::string_view v) { c.doppler_rel_tol = positive(parse_double(v), "doppler_rel_tol"); },
       [](const RunConfig& c) { return number_text(c.doppler_rel_tol); }},
      {"numerics.fd_step_fraction", {},
       [](RunConfig& c, std::string_view v) { c.fd_step_fraction = positive(parse_double(v), "fd_step_fraction"); },
       [](const RunConfig& c) { return number_text(c.fd_step_fraction); }},
      {"numerics.field_average", {},
       [](RunConfig& c, std::string_view v) {
         const std::string t = unquote(v);
         if (t == "exact") c.field_average = FieldAverageMethod::Exact;
         else if (t == "gauss_hermite") c.field_average = FieldAverageMethod::GaussHermite;
         else throw ConfigError("field_average must be exact or gauss_hermite");
       },
       [](const RunConfig& c) {
         return std::string(c.field_average == FieldAverageMethod::Exact ? "exact" : "gauss_hermite");
       }},
      {"numerics.field_nodes", {},
       [](RunConfig& c, std::string_view v) {
         c.field_nodes = parse_int(v);
         if (c.field_nodes < 2 || c.field_nodes > 256) throw ConfigError("field_nodes must be in [2, 256]");
       },
       [](const RunConfig& c) { return std::to_string(c.field_nodes); }},
      {"numerics.linear_tolerance", {},
       [](RunConfig& c, std::string_view v) { c.linear_tolerance = positive(parse_double(v), "linear_tolerance"); },
       [](const RunConfig& c) { return number_text(c.linear_tolerance); }},
      {"numerics.threads", {},
       [](RunConfig& c, std::string_view v) {
         const int n = parse_int(v);
         if (n < 0) throw ConfigError("threads must be nonnegative");
         c.threads = static_cast<unsigned>(n);
       },
       [](const RunConfig& c) { return std::to_string(c.threads); }},
      {"chi.start_mhz", {}, [](RunConfig& c, std::string_view v) { c.chi_start_mhz = parse_double(v); },
       [](const RunConfig& c) { return number_text(c.chi_start_mhz); }},
      {"chi.stop_mhz", {}, [](RunConfig& c, std::string_view v) { c.chi_stop_mhz = parse_double(v); },
       [](const RunConfig& c) { return number_text(c.chi_stop_mhz); }},
      {"chi.points", {},
       [](RunConfig& c, std::string_view v) {
         c.chi_points = parse_int(v);
         if (c.chi_points < 2) throw ConfigError("chi.points must be at least 2");
       },
       [](const RunConfig& c) { return std::to_string(c.chi_points); }},
      {"chi.pressures_torr", {},
       [](RunConfig& c, std::string_view v) {
         c.chi_pressures_torr = increasing(parse_number_list(v), "chi.pressures_torr");
         for (double p : c.chi_pressures_torr) positive(p, "chi.pressures_torr");
       },
       [](const RunConfig& c) { return list_text(c.chi_pressures_torr); }},
      {"gradient.values_gauss_per_mm", {},
       [](RunConfig& c, std::string_view v) {
         c.gradient_values_gauss_per_mm = increasing(parse_number_list(v), "gradient.values_gauss_per_mm");
         for (double g : c.gradient_values_gauss_per_mm) nonnegative(g, "gradient.values_gauss_per_mm");
       },
       [](const RunConfig& c) { return list_text(c.gradient_values_gauss_per_mm); }},
      {"pulse.optical_density", {"optical_density"},
       [](RunConfig& c, std::string_view v) { c.optical_density = nonnegative(parse_double(v), "optical_density"); },
       [](const RunConfig& c) { return optional_text(c.optical_density); }},
      {"pulse.tau_us", {},
       [](RunConfig& c, std::string_view v) { c.pulse_tau_us = positive(parse_double(v), "pulse.tau_us"); },
       [](const RunConfig& c) { return optional_text(c.pulse_tau_us); }},
      {"pulse.tau_over_beta", {},
       [](RunConfig& c, std::string_view v) { c.pulse_tau_over_beta = positive(parse_double(v), "pulse.tau_over_beta"); },
       [](const RunConfig& c) { return number_text(c.pulse_tau_over_beta); }},
      {"pulse.carrier_offset_mhz", {},
       [](RunConfig& c, std::string_view v) { c.pulse_carrier_offset_mhz = parse_double(v); },
       [](const RunConfig& c) { return number_text(c.pulse_carrier_offset_mhz); }},
      {"pulse.include_c_term", {},
       [](RunConfig& c, std::string_view v) { c.pulse_include_c_term = parse_bool(v); },
       [](const RunConfig& c) { return std::string(c.pulse_include_c_term ? "true" : "false"); }},
      {"pulse.curve_points", {},
       [](RunConfig& c, std::string_view v) {
         c.pulse_curve_points = parse_int(v);
         if (c.pulse_curve_points < 21) throw ConfigError("pulse.curve_points must be at least 21");
       },
       [](const RunConfig& c) { return std::to_string(c.pulse_curve_points); }},
      {"sweep.axis", {}, [](RunConfig& c, std::string_view v) { c.sweep_axis = canonical_axis(unquote(v)); },
       [](const RunConfig& c) { return c.sweep_axis; }},
      {"sweep.values", {},
       [](RunConfig& c, std::string_view v) { c.sweep_values = increasing(parse_number_list(v), "sweep.values"); },
       [](const RunConfig& c) { return list_text(c.sweep_values); }},
      {"output.dir", {}, [](RunConfig& c, std::string_view v) { c.output_dir = unquote(v); },
       [](const RunConfig& c) { return c.output_dir; }},
  };
  return table;
}

const KeySpec* find_key(const std::string& key) {
  for (const auto& k : key_table()) {
    if (k.name == key) return &k;
    for (const auto& a : k.aliases)
      if (a == key) return &k;
  }
  return nullptr;
}

const std::vector<std::string>& unit_suffixes() {
  static const std::vector<std::string> units = {
      "gauss_per_mm", "gauss_per_cm", "gauss_per_m", "g_per_mm", "g_per_cm", "t_per_m",
      "rad_s", "torr", "mbar", "bar", "atm", "pa", "kpa", "kelvin", "celsius", "k", "c",
      "cm3", "m3", "mm3", "cm", "mm", "um", "nm", "m", "gauss", "g", "tesla", "t", "mt", "ut",
      "mw", "uw", "w", "ghz", "mhz", "khz", "hz", "us", "ns", "ms", "s"};
  return units;
}

// Splits "pressure_torr" into ("pressure", "torr") when the tail is a unit.
std::optional<std::pair<std::string, std::string>> split_unit(const std::string& key) {
  for (const auto& u : unit_suffixes()) {
    const std::string tail = "_" + u;
    if (key.size() > tail.size() && key.compare(key.size() - tail.size(), tail.size(), tail) == 0)
      return std::make_pair(key.substr(0, key.size() - tail.size()), u);
  }
  return std::nullopt;
}

[[noreturn]] void unknown_key(const std::string& key, int line) {
  if (const auto split = split_unit(key)) {
    for (const auto& k : key_table()) {
      std::vector<std::string> names = k.aliases;
      names.push_back(k.name);
      for (const auto& n : names) {
        const auto known = split_unit(n);
        if (known && known->first == split->first && known->second != split->second)
          throw ConfigError("unit suffix mismatch: '" + key + "' should be '" + n + "'", line, key);
      }
    }
  }
  throw ConfigError("unknown key '" + key + "'", line, key);
}

}  // namespace

std::string ConfigError::format(const std::string& what, int line, const std::string& key) {
  std::string out = "config";
  if (line > 0) out += " line " + std::to_string(line);
  if (!key.empty()) out += " key '" + key + "'";
  return out + ": " + what;
}

RunConfig default_config() { return RunConfig{}; }

void set_value(RunConfig& cfg, const std::string& key, std::string_view value, int line) {
  const KeySpec* spec = find_key(key);
  if (!spec) unknown_key(key, line);
  try {
    spec->set(cfg, value);
  } catch (const ConfigError& e) {
    if (e.line() == 0 && e.key().empty()) {
      std::string what = e.what();
      const std::string prefix = "config: ";
      if (what.rfind(prefix, 0) == 0) what = what.substr(prefix.size());
      throw ConfigError(what, line, key);
    }
    throw;
  } catch (const DomainError& e) {
    throw ConfigError(e.what(), line, key);
  }
}

RunConfig parse_config(std::string_view text, RunConfig base) {
  RunConfig cfg = std::move(base);
  std::string section;
  bool saw_power = false, saw_rabi = false;
  std::stringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = raw;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError("malformed section header", line_no);
      section = trim(std::string_view(line).substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("expected key = value", line_no);
    std::string key = trim(std::string_view(line).substr(0, eq));
    if (key.empty()) throw ConfigError("missing key before '='", line_no);
    if (!section.empty()) key = section + "." + key;
    const std::string value = trim(std::string_view(line).substr(eq + 1));
    if (value.empty()) throw ConfigError("missing value", line_no, key);
    const KeySpec* spec = find_key(key);
    if (spec && spec->name == "pump.power_mw") saw_power = true;
    if (spec && spec->name == "pump.rabi_mhz") saw_rabi = true;
    if (saw_power && saw_rabi)
      throw ConfigError("pump.power_mw and pump.rabi_mhz are mutually exclusive", line_no, key);
    set_value(cfg, key, value, line_no);
  }
  return cfg;
}

void apply_override(RunConfig& cfg, std::string_view assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string_view::npos) throw ConfigError("override must be key=value: '" + std::string(assignment) + "'");
  const std::string key = trim(assignment.substr(0, eq));
  const std::string value = trim(assignment.substr(eq + 1));
  if (key.empty() || value.empty()) throw ConfigError("override must be key=value: '" + std::string(assignment) + "'");
  set_value(cfg, key, value);
}

std::vector<std::pair<std::string, std::string>> describe(const RunConfig& cfg) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& k : key_table()) out.emplace_back(k.name, k.get(cfg));
  return out;
}

std::vector<std::string> known_keys() {
  std::vector<std::string> out;
  for (const auto& k : key_table()) out.push_back(k.name);
  return out;
}

std::vector<double> parse_number_list(std::string_view text) {
  std::vector<double> out;
  std::stringstream ss{std::string(text)};
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) throw ConfigError("empty entry in number list");
    const auto dots = item.find("..");
    if (dots == std::string::npos) {
      out.push_back(parse_double(item));
      continue;
    }
    const double a = parse_double(item.substr(0, dots));
    std::string rest = item.substr(dots + 2);
    double step = 1.0;
    const auto colon = rest.find(':');
    if (colon != std::string::npos) {
      step = parse_double(rest.substr(colon + 1));
      rest = rest.substr(0, colon);
    }
    const double b = parse_double(rest);
    if (!(step > 0.0)) throw ConfigError("range step must be positive in '" + item + "'");
    if (!(b >= a)) throw ConfigError("range end precedes start in '" + item + "'");
    const auto n = static_cast<long long>(std::floor((b - a) / step + 1.0e-9));
    if (n > 1000000) throw ConfigError("range '" + item + "' is too long");
    for (long long k = 0; k <= n; ++k) out.push_back(a + static_cast<double>(k) * step);
  }
  if (out.empty()) throw ConfigError("number list is empty");
  return out;
}

std::string canonical_axis(std::string_view axis) {
  const std::string a = trim(axis);
  if (a == "p" || a == "pressure" || a == "pressure_torr") return "pressure_torr";
  if (a == "S_B" || a == "sb" || a == "SB" || a == "gradient" || a == "gradient_gauss_per_mm")
    return "gradient_gauss_per_mm";
  if (a == "B_z" || a == "bz" || a == "Bz" || a == "bz_gauss") return "bz_gauss";
  if (a == "D" || a == "d" || a == "optical_density") return "optical_density";
  throw ConfigError("unknown sweep axis '" + a + "' (expected p, S_B, B_z or D)");
}

std::vector<SchemeId> active_schemes(const RunConfig& cfg) {
  if (cfg.schemes.empty()) return {cfg.scheme};
  return cfg.schemes;
}

double resolved_pressure(const RunConfig& cfg, SchemeId scheme) {
  if (cfg.pressure_torr) return *cfg.pressure_torr;
  const auto& per = scheme == SchemeId::A ? cfg.pressure_a_torr : cfg.pressure_b_torr;
  if (per) return *per;
  return 2.0;
}

EnvironmentInputs environment_inputs(const RunConfig& cfg) {
  EnvironmentInputs in;
  in.temperature = cfg.temp_k;
  in.density = cfg.density_cm3 * 1.0e6;
  in.geometry = Geometry{cfg.cell_length_cm * 1.0e-2, cfg.beam_width_mm * 1.0e-3,
                         cfg.beam_height_mm * 1.0e-3};
  return in;
}

AtomicSystem build_system(const RunConfig& cfg, SchemeId scheme, double pressure_torr) {
  const EnvironmentInputs in = environment_inputs(cfg);
  AtomicSystem sys;
  sys.scheme = make_scheme(scheme);
  sys.env = derive_environment(in.temperature, pressure_torr, in.density, in.geometry);
  if (cfg.pump_rabi_mhz) {
    sys.fields.pump_rabi = mhz_to_rad_s(*cfg.pump_rabi_mhz);
  } else if (cfg.pump_power_mw) {
    sys.fields.pump_rabi = rabi_from_power(*cfg.pump_power_mw * 1.0e-3, in.geometry.width,
                                           in.geometry.height, sys.scheme.f23);
  } else {
    throw ConfigError("missing required key: pump.power_mw or pump.rabi_mhz");
  }
  sys.fields.pump_detuning = mhz_to_rad_s(cfg.pump_detuning_mhz);
  sys.fields.bz = cfg.bz_gauss;
  sys.fields.gradient = cfg.gradient_gauss_per_mm * 1.0e3;
  return sys;
}

AtomicSystem build_system(const RunConfig& cfg, SchemeId scheme) {
  return build_system(cfg, scheme, resolved_pressure(cfg, scheme));
}

SearchSettings search_settings(const RunConfig& cfg, unsigned threads) {
  SearchSettings s;
  s.step_fraction = cfg.fd_step_fraction;
  s.threads = threads;
  s.doppler.method = cfg.doppler_method;
  s.doppler.min_nodes = cfg.doppler_min_nodes;
  s.doppler.rel_tol = cfg.doppler_rel_tol;
  return s;
}

GradientSettings gradient_settings(const RunConfig& cfg, unsigned threads) {
  GradientSettings g;
  g.search = search_settings(cfg, threads);
  g.average = cfg.field_average;
  g.field_nodes = cfg.field_nodes;
  g.max_field_nodes = std::max(256, cfg.field_nodes);
  return g;
}

ChannelSettings channel_settings(const RunConfig& cfg, unsigned threads) {
  ChannelSettings c;
  c.gradient = gradient_settings(cfg, threads);
  c.linear_tolerance = cfg.linear_tolerance;
  return c;
}

void validate(const RunConfig& cfg) {
  if (!(cfg.chi_stop_mhz > cfg.chi_start_mhz))
    throw ConfigError("chi.stop_mhz must exceed chi.start_mhz", 0, "chi.stop_mhz");
  if (cfg.pump_power_mw.has_value() == cfg.pump_rabi_mhz.has_value())
    throw ConfigError("exactly one of pump.power_mw and pump.rabi_mhz must be set");
  if (!cfg.sweep_axis.empty() && cfg.sweep_values.empty())
    throw ConfigError("missing required key: sweep.values", 0, "sweep.values");
  for (SchemeId s : active_schemes(cfg)) {
    const double p = resolved_pressure(cfg, s);
    if (!(p > 0.0)) throw ConfigError("pressure must be positive", 0, "pressure_torr");
  }
}

}  // namespace eitsim::cli
