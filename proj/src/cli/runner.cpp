#include "eitsim/cli/runner.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <functional>

#include "eitsim/cli/output.hpp"
#include "eitsim/parallel.hpp"

namespace eitsim::cli {

namespace {

namespace fs = std::filesystem;

struct Artifact {
  std::string file;
  std::string kind;
  Json info;
};

struct CommandOutput {
  std::vector<Artifact> artifacts;
  int failed_points = 0;
};

struct Context {
  const RunConfig& cfg;
  unsigned threads;
  fs::path dir;
};

std::string compact(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

std::string scheme_tag(const RunConfig& cfg, SchemeId s) {
  return cfg.schemes.empty() ? "" : "_" + to_string(s);
}

Json system_json(const AtomicSystem& sys) {
  Json j;
  j["scheme"] = to_string(sys.scheme.id);
  j["pump_rabi_rad_s"] = number(sys.fields.pump_rabi);
  j["pump_rabi_mhz"] = number(rad_s_to_mhz(sys.fields.pump_rabi));
  j["bz_gauss"] = number(sys.fields.bz);
  j["gradient_gauss_per_mm"] = number(sys.fields.gradient * 1.0e-3);
  j["environment"] = to_json(sys.env);
  return j;
}

std::vector<double> detuning_grid(const RunConfig& cfg) {
  return linear_grid(mhz_to_rad_s(cfg.chi_start_mhz), mhz_to_rad_s(cfg.chi_stop_mhz),
                     static_cast<std::size_t>(cfg.chi_points));
}

void emit(Context& ctx, CommandOutput& out, const std::string& file, const std::string& kind,
          const std::string& content, Json info = Json::object()) {
  write_file(ctx.dir / file, content);
  out.artifacts.push_back({file, kind, std::move(info)});
}

std::string json_text(const Json& j) { return j.dump(2) + "\n"; }

CommandOutput run_chi(Context& ctx) {
  CommandOutput out;
  const RunConfig& cfg = ctx.cfg;
  const SearchSettings search = search_settings(cfg, ctx.threads);
  for (SchemeId s : active_schemes(cfg)) {
    std::vector<double> pressures = cfg.chi_pressures_torr;
    const bool tagged = !pressures.empty();
    if (!tagged) pressures = {resolved_pressure(cfg, s)};
    for (double p : pressures) {
      const AtomicSystem sys = build_system(cfg, s, p);
      const auto curve = susceptibility_curve(sys, detuning_grid(cfg), search.doppler, ctx.threads);
      const std::string file =
          "chi" + scheme_tag(cfg, s) + (tagged ? "_p" + compact(p) : "") + ".csv";
      emit(ctx, out, file, "susceptibility_curve", curve_csv(curve), system_json(sys));
    }
  }
  return out;
}

CommandOutput run_resonance(Context& ctx) {
  CommandOutput out;
  const RunConfig& cfg = ctx.cfg;
  const GradientSettings gs = gradient_settings(cfg, ctx.threads);
  for (SchemeId s : active_schemes(cfg)) {
    const AtomicSystem sys = build_system(cfg, s);
    const ResonanceParams r = gradient_resonance(sys, sys.fields.gradient, gs);
    const double d = cfg.optical_density ? *cfg.optical_density : optical_density(sys.env, sys.scheme);
    Json j;
    j["system"] = system_json(sys);
    j["resonance"] = to_json(r);
    j["analytic_estimates"] = to_json(analytic_estimates(sys));
    j["pulse_figures"] = to_json(pulse_figures(r, d));
    emit(ctx, out, "resonance" + scheme_tag(cfg, s) + ".json", "resonance_params", json_text(j));
  }
  return out;
}

CommandOutput run_pulse(Context& ctx) {
  CommandOutput out;
  const RunConfig& cfg = ctx.cfg;
  const GradientSettings gs = gradient_settings(cfg, ctx.threads);
  for (SchemeId s : active_schemes(cfg)) {
    const AtomicSystem sys = build_system(cfg, s);
    const double sb = sys.fields.gradient;
    const ResonanceParams r = gradient_resonance(sys, sb, gs);
    const double d = cfg.optical_density ? *cfg.optical_density : optical_density(sys.env, sys.scheme);
    if (!(d > 0.0)) throw ConfigError("pulse needs a positive optical density", 0, "pulse.optical_density");
    const double beta = r.width / std::sqrt(d);
    const double tau = cfg.pulse_tau_us ? *cfg.pulse_tau_us * 1.0e-6 : cfg.pulse_tau_over_beta / beta;
    const double delay = r.slope * d / 2.0;
    const double width_out = std::sqrt(tau * tau + 1.0 / (beta * beta));
    const TimeSeries input = gaussian_pulse(tau, make_pulse_grid(tau, delay, width_out));

    const double carrier = r.center + mhz_to_rad_s(cfg.pulse_carrier_offset_mhz);
    const double half = std::max(8.0 / tau, 2.0 * r.width);
    // Linear interpolation kinks leak into the time-domain tails unless the
    // curve resolves the pulse spectrum: at least 10 samples per 1/tau.
    const auto points = std::max(static_cast<std::size_t>(cfg.pulse_curve_points),
                                 static_cast<std::size_t>(std::ceil(20.0 * half * tau)) + 1);
    const auto grid = linear_grid(carrier - half, carrier + half, points);
    const SusceptibilityCurve curve =
        sb > 0.0 ? gradient_curve(sys, sb, grid, gs, ctx.threads)
                 : susceptibility_curve(sys, grid, gs.search.doppler, ctx.threads);
    validate_curve_sampling(curve, r.center, r.width);

    PropagationOptions po;
    po.carrier_detuning = carrier;
    po.include_c_term = cfg.pulse_include_c_term;
    po.cell_length = sys.env.geometry.cell_length;
    const TimeSeries output = propagate(input, d, curve, po);
    const PulseMetrics m = measure_pulse(input, output);

    const std::string tag = scheme_tag(cfg, s);
    emit(ctx, out, "pulse_input" + tag + ".csv", "time_series", time_series_csv(input));
    emit(ctx, out, "pulse_output" + tag + ".csv", "time_series", time_series_csv(output));
    Json j;
    j["system"] = system_json(sys);
    j["optical_density"] = number(d);
    j["tau_s"] = number(tau);
    j["carrier_rad_s"] = number(carrier);
    j["resonance"] = to_json(r);
    j["metrics"] = to_json(m);
    Json pred;
    pred["delay_s"] = number(delay);
    pred["transmission"] = number(std::exp(-r.absorption * d));
    pred["width_out_s"] = number(width_out);
    j["closed_form"] = pred;
    emit(ctx, out, "pulse_metrics" + tag + ".json", "pulse_metrics", json_text(j));
  }
  return out;
}

CommandOutput run_gradient(Context& ctx) {
  CommandOutput out;
  const RunConfig& cfg = ctx.cfg;
  const GradientSettings gs = gradient_settings(cfg, ctx.threads);
  for (SchemeId s : active_schemes(cfg)) {
    const AtomicSystem sys = build_system(cfg, s);
    std::vector<double> values = cfg.gradient_values_gauss_per_mm;
    const bool tagged = !values.empty();
    if (!tagged) values = {cfg.gradient_gauss_per_mm};
    for (double g : values) {
      const auto curve = gradient_curve(sys, g * 1.0e3, detuning_grid(cfg), gs, ctx.threads);
      const std::string file =
          "gradient_chi" + scheme_tag(cfg, s) + (tagged ? "_sb" + compact(g) : "") + ".csv";
      Json info = system_json(curve.system ? *curve.system : sys);
      emit(ctx, out, file, "susceptibility_curve", curve_csv(curve), info);
    }
  }
  return out;
}

CommandOutput run_channel(Context& ctx) {
  CommandOutput out;
  const RunConfig& cfg = ctx.cfg;
  const ChannelSettings cs = channel_settings(cfg, ctx.threads);
  for (SchemeId s : active_schemes(cfg)) {
    const AtomicSystem sys = build_system(cfg, s);
    const ChannelPerformance c = channel_performance(sys, sys.fields.gradient, cs);
    Json j;
    j["system"] = system_json(sys);
    j["channel"] = to_json(c);
    emit(ctx, out, "channel" + scheme_tag(cfg, s) + ".json", "channel_performance", json_text(j));
  }
  return out;
}

using Row = std::pair<std::string, double>;

std::vector<Row> resonance_rows(const ResonanceParams& r) {
  return {{"center_rad_s", r.center},        {"center_mhz", rad_s_to_mhz(r.center)},
          {"absorption", r.absorption},      {"slope_s", r.slope},
          {"width_rad_s", r.width},          {"width_mhz", rad_s_to_mhz(r.width)},
          {"eit_ratio", r.eit_ratio}};
}

std::vector<Row> channel_rows(const ChannelPerformance& c) {
  std::vector<Row> rows = resonance_rows(c.resonance);
  const std::vector<Row> more = {{"bandwidth_rad_s", c.bandwidth},
                                 {"bandwidth_mhz", rad_s_to_mhz(c.bandwidth)},
                                 {"max_mismatch_rad_s", c.max_mismatch},
                                 {"effective_slope_s", c.effective_slope},
                                 {"max_optical_density", c.max_optical_density},
                                 {"max_delay_s", c.max_delay},
                                 {"delay_bandwidth", c.delay_bandwidth},
                                 {"linear_bound_active", c.linear_bound_active ? 1.0 : 0.0}};
  rows.insert(rows.end(), more.begin(), more.end());
  return rows;
}

std::vector<Row> figure_rows(const PulseFigures& f) {
  const double inverse = std::isfinite(f.bandwidth) && f.bandwidth > 0.0 ? 1.0 / f.bandwidth : 0.0;
  return {{"delay_s", f.delay},
          {"loss", f.loss},
          {"bandwidth_rad_s", f.bandwidth},
          {"inverse_bandwidth_s", inverse},
          {"delay_bandwidth", f.delay_bandwidth}};
}

struct PointResult {
  std::vector<Row> rows;
  std::string error;
};

CommandOutput run_sweep(Context& ctx) {
  CommandOutput out;
  const RunConfig& cfg = ctx.cfg;
  if (cfg.sweep_axis.empty()) throw ConfigError("missing required key: sweep.axis", 0, "sweep.axis");
  if (cfg.sweep_values.empty())
    throw ConfigError("missing required key: sweep.values", 0, "sweep.values");
  const std::string& axis = cfg.sweep_axis;
  const ChannelSettings cs_inner = channel_settings(cfg, 1);
  const GradientSettings gs_outer = gradient_settings(cfg, ctx.threads);

  for (SchemeId s : active_schemes(cfg)) {
    const auto& values = cfg.sweep_values;
    std::vector<PointResult> points;
    if (axis == "optical_density") {
      // One resonance, many densities.
      PointResult shared;
      std::optional<ResonanceParams> r;
      try {
        const AtomicSystem sys = build_system(cfg, s);
        r = gradient_resonance(sys, sys.fields.gradient, gs_outer);
      } catch (const std::exception& e) {
        shared.error = e.what();
      }
      for (double d : values) {
        PointResult p;
        if (!r) {
          p.error = shared.error;
        } else if (d < 0.0) {
          p.error = "optical density must be nonnegative";
        } else {
          p.rows = figure_rows(pulse_figures(*r, d));
        }
        points.push_back(std::move(p));
      }
    } else {
      points = parallel_map(values.size(), ctx.threads, [&](std::size_t i) {
        PointResult p;
        const double v = values[i];
        try {
          if (axis == "pressure_torr") {
            if (!(v > 0.0)) throw DomainError("pressure", "must be positive");
            const AtomicSystem sys = build_system(cfg, s, v);
            p.rows = channel_rows(channel_performance(sys, sys.fields.gradient, cs_inner));
          } else if (axis == "gradient_gauss_per_mm") {
            const AtomicSystem sys = build_system(cfg, s);
            p.rows = channel_rows(channel_performance(sys, v * 1.0e3, cs_inner));
          } else if (axis == "bz_gauss") {
            AtomicSystem sys = build_system(cfg, s);
            sys.fields.bz = v;
            p.rows = resonance_rows(gradient_resonance(sys, sys.fields.gradient, cs_inner.gradient));
          } else {
            throw ConfigError("unknown sweep axis '" + axis + "'");
          }
        } catch (const ConfigError&) {
          throw;
        } catch (const std::exception& e) {
          p.error = e.what();
        }
        return p;
      });
    }

    CsvTable t({"axis", "value", "quantity", "result", "status"});
    int failed = 0;
    for (std::size_t i = 0; i < values.size(); ++i) {
      const PointResult& p = points[i];
      if (!p.error.empty()) {
        ++failed;
        t.add_row({axis, csv_number(values[i]), "", "nan", "failed: " + p.error});
        continue;
      }
      for (const auto& [name, value] : p.rows)
        t.add_row({axis, csv_number(values[i]), name, csv_number(value), "ok"});
    }
    out.failed_points += failed;
    Json info;
    info["scheme"] = to_string(s);
    info["axis"] = axis;
    info["points"] = values.size();
    info["failed_points"] = failed;
    emit(ctx, out, "sweep" + scheme_tag(cfg, s) + ".csv", "sweep", t.str(), info);
  }
  return out;
}

}  // namespace

std::vector<std::string> command_names() {
  return {"chi", "resonance", "pulse", "gradient", "channel", "sweep"};
}

RunResult run_command(const std::string& command, const RunConfig& cfg, unsigned threads) {
  validate(cfg);
  const auto started = std::chrono::steady_clock::now();
  Context ctx{cfg, std::max(1u, threads), fs::path(cfg.output_dir)};
  fs::create_directories(ctx.dir);

  CommandOutput out;
  if (command == "chi") out = run_chi(ctx);
  else if (command == "resonance") out = run_resonance(ctx);
  else if (command == "pulse") out = run_pulse(ctx);
  else if (command == "gradient") out = run_gradient(ctx);
  else if (command == "channel") out = run_channel(ctx);
  else if (command == "sweep") out = run_sweep(ctx);
  else throw ConfigError("unknown command '" + command + "'");

  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  Json manifest;
  manifest["tool"] = "eitsim";
  manifest["version"] = EITSIM_VERSION;
  manifest["command"] = command;
  manifest["preset"] = cfg.preset;
  Json echo = Json::object();
  for (const auto& [k, v] : describe(cfg)) echo[k] = v;
  manifest["config"] = echo;
  Json artifacts = Json::array();
  RunResult result;
  for (const auto& a : out.artifacts) {
    Json item;
    item["file"] = a.file;
    item["kind"] = a.kind;
    if (!a.info.empty()) item["info"] = a.info;
    artifacts.push_back(item);
    result.artifacts.push_back(a.file);
  }
  manifest["artifacts"] = artifacts;
  Json diag;
  diag["failed_points"] = out.failed_points;
  diag["converged"] = out.failed_points == 0;
  manifest["diagnostics"] = diag;
  manifest["threads"] = ctx.threads;
  manifest["wall_clock_s"] = elapsed;
  write_file(ctx.dir / "manifest.json", manifest.dump(2) + "\n");
  result.manifest = "manifest.json";
  result.failed_points = out.failed_points;
  return result;
}

}  // namespace eitsim::cli
