#include "eitsim/cli/output.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "eitsim/errors.hpp"

namespace eitsim::cli {

std::string csv_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

CsvTable::CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

void CsvTable::add_row(std::vector<std::string> cells) {
  if (cells.size() != header_.size()) throw std::logic_error("csv row width does not match header");
  rows_.push_back(std::move(cells));
}

namespace {
std::string escape(const std::string& cell) {
  if (cell.find_first_of(",\"\n") == std::string::npos) return cell;
  std::string out = "\"";
  for (char c : cell) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

void append_row(std::string& out, const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out += ',';
    out += escape(cells[i]);
  }
  out += '\n';
}
}  // namespace

std::string CsvTable::str() const {
  std::string out;
  append_row(out, header_);
  for (const auto& r : rows_) append_row(out, r);
  return out;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw ValidationError("cannot open '" + path.string() + "' for writing");
  f << content;
  if (!f) throw ValidationError("failed writing '" + path.string() + "'");
}

std::string curve_csv(const SusceptibilityCurve& curve) {
  CsvTable t({"detuning_mhz", "detuning_rad_s", "chi_real", "chi_imag"});
  for (std::size_t i = 0; i < curve.size(); ++i) {
    const double d = curve.detunings[i];
    t.add_row({csv_number(rad_s_to_mhz(d)), csv_number(d), csv_number(curve.chi[i].real()),
               csv_number(curve.chi[i].imag())});
  }
  return t.str();
}

std::string time_series_csv(const TimeSeries& s) {
  CsvTable t({"time_us", "time_s", "envelope_real", "envelope_imag", "intensity"});
  for (std::size_t i = 0; i < s.envelope.size(); ++i) {
    const double time = s.grid.time(i);
    t.add_row({csv_number(time * 1.0e6), csv_number(time), csv_number(s.envelope[i].real()),
               csv_number(s.envelope[i].imag()), csv_number(std::norm(s.envelope[i]))});
  }
  return t.str();
}

Json number(double v) {
  if (std::isfinite(v)) return v;
  return csv_number(v);
}

Json to_json(const ResonanceParams& r) {
  Json j;
  j["center_rad_s"] = number(r.center);
  j["center_mhz"] = number(rad_s_to_mhz(r.center));
  j["phase"] = number(r.phase);
  j["absorption"] = number(r.absorption);
  j["slope_s"] = number(r.slope);
  j["width_rad_s"] = number(r.width);
  j["width_mhz"] = number(rad_s_to_mhz(r.width));
  j["eit_ratio"] = number(r.eit_ratio);
  j["no_pump_absorption"] = number(r.no_pump_absorption);
  j["fd_step_rad_s"] = number(r.step);
  j["bracket_widenings"] = r.widenings;
  return j;
}

Json to_json(const AnalyticEstimates& e) {
  Json j;
  j["absorption"] = number(e.absorption);
  j["slope_s"] = number(e.slope);
  j["width_rad_s"] = number(e.width);
  j["width_mhz"] = number(rad_s_to_mhz(e.width));
  j["offres_absorption"] = number(e.offres_absorption);
  j["ac_stark_shift_rad_s"] = number(e.ac_stark_shift);
  j["gradient_absorption"] = number(e.gradient_absorption);
  return j;
}

Json to_json(const PulseFigures& f) {
  Json j;
  j["optical_density"] = number(f.optical_density);
  j["delay_s"] = number(f.delay);
  j["loss"] = number(f.loss);
  j["bandwidth_rad_s"] = number(f.bandwidth);
  j["bandwidth_mhz"] = number(rad_s_to_mhz(f.bandwidth));
  j["delay_bandwidth"] = number(f.delay_bandwidth);
  j["max_optical_density"] = number(f.max_optical_density);
  j["best_delay_bandwidth"] = number(f.best_delay_bandwidth);
  return j;
}

Json to_json(const PulseMetrics& m) {
  Json j;
  j["delay_s"] = number(m.delay);
  j["centroid_delay_s"] = number(m.centroid_delay);
  j["transmission"] = number(m.transmission);
  j["width_in_s"] = number(m.width_in);
  j["width_out_s"] = number(m.width_out);
  j["broadening_ratio"] = number(m.broadening_ratio);
  j["energy_ratio"] = number(m.energy_ratio);
  return j;
}

Json to_json(const ChannelPerformance& c) {
  Json j;
  j["gradient_gauss_per_mm"] = number(c.gradient * 1.0e-3);
  j["bandwidth_rad_s"] = number(c.bandwidth);
  j["bandwidth_mhz"] = number(rad_s_to_mhz(c.bandwidth));
  j["max_mismatch_rad_s"] = number(c.max_mismatch);
  j["dispersion_slope_rad_s_per_m"] = number(c.dispersion_slope);
  j["resonance_slope_rad_s_per_m"] = number(c.resonance_slope);
  j["effective_slope_s"] = number(c.effective_slope);
  j["max_optical_density"] = number(c.max_optical_density);
  j["max_delay_s"] = number(c.max_delay);
  j["delay_bandwidth"] = number(c.delay_bandwidth);
  j["edge_detuning_rad_s"] = number(c.edge_detuning);
  j["local_bandwidth_rad_s"] = number(c.local_bandwidth);
  j["linear_bound_active"] = c.linear_bound_active;
  j["absorption_clamped"] = c.absorption_clamped;
  j["closed_form_effective_slope_s"] = number(c.closed_form_effective_slope);
  j["closed_form_delay_bandwidth"] = number(c.closed_form_delay_bandwidth);
  j["resonance"] = to_json(c.resonance);
  j["warnings"] = c.warnings;
  return j;
}

Json to_json(const Environment& e) {
  Json j;
  j["temperature_k"] = number(e.temperature);
  j["pressure_torr"] = number(e.pressure);
  j["density_m3"] = number(e.density);
  j["cell_length_m"] = number(e.geometry.cell_length);
  j["width_m"] = number(e.geometry.width);
  j["height_m"] = number(e.geometry.height);
  j["thermal_velocity_m_s"] = number(e.thermal_velocity);
  j["diffusion_constant_m2_s"] = number(e.diffusion_constant);
  j["mean_free_path_m"] = number(e.mean_free_path);
  j["gamma_diff_rad_s"] = number(e.gamma_diff);
  j["gamma_e_rad_s"] = number(e.gamma_e);
  j["doppler_width_rad_s"] = number(e.doppler_width);
  return j;
}

}  // namespace eitsim::cli
