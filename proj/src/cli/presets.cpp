#include "eitsim/cli/presets.hpp"

namespace eitsim::cli {

namespace {

// 5 mW over a 2 cm x 0.5 mm interaction region.
void wide_channel(RunConfig& c) {
  c.pump_power_mw = 5.0;
  c.pump_rabi_mhz.reset();
  c.beam_width_mm = 20.0;
  c.beam_height_mm = 0.5;
}

}  // namespace

std::vector<std::string> preset_names() {
  return {"fig2", "fig3a", "fig3b", "fig5", "fig6", "fig7", "fig8c", "fig9"};
}

Preset preset(std::string_view name) {
  Preset p;
  p.name = std::string(name);
  RunConfig& c = p.config;
  c = default_config();
  c.preset = p.name;
  if (name == "fig2") {
    p.command = "chi";
    p.description = "susceptibility of both schemes at 3 and 30 Torr, B = 0";
    c.schemes = {SchemeId::A, SchemeId::B};
    c.chi_pressures_torr = {3.0, 30.0};
    c.chi_start_mhz = -1500.0;
    c.chi_stop_mhz = 2500.0;
    c.chi_points = 801;
  } else if (name == "fig3a") {
    p.command = "sweep";
    p.description = "delay, loss and inverse bandwidth versus optical density, Scheme A, 2 Torr";
    c.scheme = SchemeId::A;
    c.pressure_torr = 2.0;
    c.sweep_axis = "optical_density";
    c.sweep_values = parse_number_list("0..400:10");
  } else if (name == "fig3b") {
    p.command = "sweep";
    p.description = "delay, loss and inverse bandwidth versus optical density, Scheme B, 15 Torr";
    c.scheme = SchemeId::B;
    c.pressure_torr = 15.0;
    c.sweep_axis = "optical_density";
    c.sweep_values = parse_number_list("0..400:10");
  } else if (name == "fig5") {
    p.command = "sweep";
    p.description = "resonance parameters versus homogeneous field; A at 1.2 Torr, B at 30 Torr";
    c.schemes = {SchemeId::A, SchemeId::B};
    c.pressure_a_torr = 1.2;
    c.pressure_b_torr = 30.0;
    c.sweep_axis = "bz_gauss";
    c.sweep_values = parse_number_list("-200..200:25");
  } else if (name == "fig6") {
    p.command = "gradient";
    p.description = "gradient-averaged susceptibility at 25 Torr for S_B = 0, 2, 8 G/mm";
    wide_channel(c);
    c.schemes = {SchemeId::A, SchemeId::B};
    c.pressure_torr = 25.0;
    c.gradient_values_gauss_per_mm = {0.0, 2.0, 8.0};
    c.chi_start_mhz = -15.0;
    c.chi_stop_mhz = 15.0;
    c.chi_points = 121;
  } else if (name == "fig7") {
    p.command = "sweep";
    p.description = "resonance parameters versus gradient; A at 10 Torr, B at 25 Torr";
    wide_channel(c);
    c.schemes = {SchemeId::A, SchemeId::B};
    c.pressure_a_torr = 10.0;
    c.pressure_b_torr = 25.0;
    c.sweep_axis = "gradient_gauss_per_mm";
    c.sweep_values = {0.5, 1.0, 2.0, 4.0, 8.0};
  } else if (name == "fig8c") {
    p.command = "sweep";
    p.description = "maximum delay versus channel bandwidth; A at 10 Torr, B at 25 Torr";
    wide_channel(c);
    c.schemes = {SchemeId::A, SchemeId::B};
    c.pressure_a_torr = 10.0;
    c.pressure_b_torr = 25.0;
    c.sweep_axis = "gradient_gauss_per_mm";
    c.sweep_values = {0.25, 0.5, 1.0, 2.0, 3.0, 4.0, 6.0, 8.0};
  } else if (name == "fig9") {
    p.command = "sweep";
    p.description = "delay-bandwidth product versus pressure, Scheme B, S_B = 2 G/mm";
    wide_channel(c);
    c.scheme = SchemeId::B;
    c.gradient_gauss_per_mm = 2.0;
    c.sweep_axis = "pressure_torr";
    c.sweep_values = {5.0, 10.0, 15.0, 20.0, 25.0, 30.0, 40.0, 50.0, 60.0};
  } else {
    throw ConfigError("unknown preset '" + std::string(name) + "'");
  }
  return p;
}

}  // namespace eitsim::cli
