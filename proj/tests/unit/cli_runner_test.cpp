#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "eitsim/cli/output.hpp"
#include "eitsim/cli/presets.hpp"
#include "eitsim/cli/runner.hpp"
#include "support.hpp"

using namespace eitsim;
using namespace eitsim::cli;
using namespace eitsim::testing;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("eitsim_cli_test_" + name);
  fs::remove_all(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json read_json(const fs::path& p) { return Json::parse(slurp(p)); }

std::vector<std::vector<std::string>> read_csv(const fs::path& p) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(slurp(p));
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

}  // namespace

TEST_CASE("config defaults") {
  const RunConfig c = parse_config("");
  CHECK(c.scheme == SchemeId::A);
  CHECK(c.temp_k == 333.0);
  CHECK(c.density_cm3 == 2.5e11);
  CHECK(c.pump_power_mw == 1.0);
  CHECK_FALSE(c.pump_rabi_mhz);
  CHECK(c.beam_width_mm == 2.0);
  CHECK(c.beam_height_mm == 2.0);
  const AtomicSystem sys = build_system(c, SchemeId::A);
  CHECK(sys.fields.pump_rabi == doctest::Approx(mhz(8.45)));
  CHECK(sys.env.pressure == 2.0);
}

TEST_CASE("config parsing") {
  SUBCASE("sections, comments and units") {
    const RunConfig c = parse_config(
        "# baseline B cell\n"
        "scheme = B\n"
        "pressure_torr = 15   # buffer gas\n"
        "[beam]\n"
        "width_mm = 20\n"
        "height_mm = 0.5\n"
        "[sweep]\n"
        "axis = p\n"
        "values = 5..20:5\n");
    CHECK(c.scheme == SchemeId::B);
    CHECK(c.pressure_torr == 15.0);
    CHECK(c.beam_width_mm == 20.0);
    CHECK(c.sweep_axis == "pressure_torr");
    CHECK(c.sweep_values == std::vector<double>{5.0, 10.0, 15.0, 20.0});
  }
  SUBCASE("explicit Rabi frequency overrides the power") {
    RunConfig c = parse_config("pump.rabi_mhz = 12.3\n");
    CHECK(c.pump_rabi_mhz == 12.3);
    CHECK_FALSE(c.pump_power_mw);
    CHECK(build_system(c, SchemeId::B).fields.pump_rabi == doctest::Approx(mhz(12.3)));
    apply_override(c, "pump_power_mw=2");
    CHECK_FALSE(c.pump_rabi_mhz);
    CHECK(c.pump_power_mw == 2.0);
  }
  SUBCASE("both pump settings in one document") {
    CHECK_THROWS_AS(parse_config("pump.power_mw = 1\npump.rabi_mhz = 3\n"), ConfigError);
  }
  SUBCASE("negative pressure") {
    CHECK_THROWS_AS(validate(parse_config("pressure_torr = -1\n")), ValidationError);
  }
  SUBCASE("errors carry line and key context") {
    try {
      parse_config("scheme = A\n\nfoo_bar = 3\n");
      FAIL("expected a ConfigError");
    } catch (const ConfigError& e) {
      CHECK(e.line() == 3);
      CHECK(e.key() == "foo_bar");
      CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    }
    try {
      parse_config("pressure_mbar = 3\n");
      FAIL("expected a ConfigError");
    } catch (const ConfigError& e) {
      CHECK(std::string(e.what()).find("pressure_torr") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_config("temp_k = warm\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("just text\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("sweep.values = 5..1\n"), ConfigError);
  }
  SUBCASE("number lists") {
    CHECK(parse_number_list("1, 2.5,4") == std::vector<double>{1.0, 2.5, 4.0});
    CHECK(parse_number_list("0..400").size() == 401);
    CHECK(parse_number_list("-200..200:100") == std::vector<double>{-200, -100, 0, 100, 200});
    CHECK_THROWS_AS(parse_number_list(""), ConfigError);
  }
  SUBCASE("axis names") {
    CHECK(canonical_axis("S_B") == "gradient_gauss_per_mm");
    CHECK(canonical_axis("B_z") == "bz_gauss");
    CHECK(canonical_axis("D") == "optical_density");
    CHECK(canonical_axis("p") == "pressure_torr");
    CHECK_THROWS_AS(canonical_axis("temperature"), ConfigError);
  }
}

TEST_CASE("presets") {
  const Preset b = preset("fig3b");
  CHECK(b.config.scheme == SchemeId::B);
  CHECK(b.config.pressure_torr == 15.0);

  const Preset f7 = preset("fig7");
  CHECK(f7.config.pump_power_mw == 5.0);
  CHECK(f7.config.beam_width_mm == 20.0);
  CHECK(f7.config.beam_height_mm == 0.5);
  CHECK(resolved_pressure(f7.config, SchemeId::A) == 10.0);
  CHECK(resolved_pressure(f7.config, SchemeId::B) == 25.0);

  const Preset f2 = preset("fig2");
  CHECK(f2.config.chi_pressures_torr == std::vector<double>{3.0, 30.0});

  for (const auto& name : preset_names()) CHECK_NOTHROW(validate(preset(name).config));
  CHECK_THROWS_AS(preset("fig4"), ConfigError);
}

TEST_CASE("resonance command") {
  RunConfig c = default_config();
  c.output_dir = scratch("resonance").string();
  const RunResult r = run_command("resonance", c, 1);
  REQUIRE(r.artifacts == std::vector<std::string>{"resonance.json"});
  const Json j = read_json(fs::path(c.output_dir) / "resonance.json");
  CHECK(rel_diff(j["resonance"]["absorption"].get<double>(), 0.005) < 0.25);
  CHECK(j["resonance"].contains("slope_s"));
  CHECK(j["resonance"].contains("width_mhz"));

  const Json m = read_json(fs::path(c.output_dir) / "manifest.json");
  CHECK(m["command"] == "resonance");
  CHECK(m["artifacts"].size() == 1);
  CHECK(m["artifacts"][0]["file"] == "resonance.json");
  CHECK(m["diagnostics"]["converged"] == true);
  CHECK(m["config"]["scheme"] == "A");
  CHECK(j["system"]["environment"]["pressure_torr"].get<double>() == 2.0);
}

TEST_CASE("chi command writes the documented columns") {
  RunConfig c = default_config();
  c.scheme = SchemeId::B;
  c.pressure_torr = 15.0;
  c.chi_points = 11;
  c.output_dir = scratch("chi").string();
  run_command("chi", c, 2);
  const auto rows = read_csv(fs::path(c.output_dir) / "chi.csv");
  REQUIRE(rows.size() == 12);
  CHECK(rows[0] == std::vector<std::string>{"detuning_mhz", "detuning_rad_s", "chi_real", "chi_imag"});
  CHECK(std::stod(rows[1][0]) == doctest::Approx(-5.0));
  CHECK(std::stod(rows[1][1]) == doctest::Approx(mhz(-5.0)));
}

TEST_CASE("channel command with zero gradient") {
  RunConfig c = default_config();
  c.scheme = SchemeId::B;
  c.pressure_torr = 25.0;
  c.output_dir = scratch("channel").string();
  run_command("channel", c, 1);
  const Json j = read_json(fs::path(c.output_dir) / "channel.json");
  CHECK(j["channel"]["delay_bandwidth"].get<double>() == 0.0);
  CHECK(j["channel"]["bandwidth_rad_s"].get<double>() == 0.0);
}

TEST_CASE("pulse and gradient commands") {
  RunConfig c = default_config();
  c.scheme = SchemeId::B;
  c.pressure_torr = 15.0;
  c.optical_density = 100.0;
  c.output_dir = scratch("pulse").string();
  const RunResult r = run_command("pulse", c, 2);
  CHECK(r.artifacts ==
        std::vector<std::string>{"pulse_input.csv", "pulse_output.csv", "pulse_metrics.json"});
  const Json j = read_json(fs::path(c.output_dir) / "pulse_metrics.json");
  CHECK(rel_diff(j["metrics"]["delay_s"].get<double>(), j["closed_form"]["delay_s"].get<double>()) < 0.1);
  CHECK(read_csv(fs::path(c.output_dir) / "pulse_input.csv")[0].size() >= 3);

  RunConfig g = preset("fig6").config;
  g.schemes = {SchemeId::B};
  g.gradient_values_gauss_per_mm = {0.0, 2.0};
  g.chi_points = 21;
  g.output_dir = scratch("gradient").string();
  const RunResult rg = run_command("gradient", g, 2);
  CHECK(rg.artifacts == std::vector<std::string>{"gradient_chi_B_sb0.csv", "gradient_chi_B_sb2.csv"});
}

TEST_CASE("sweeps record failed points and continue") {
  RunConfig c = default_config();
  c.scheme = SchemeId::B;
  c.sweep_axis = "pressure_torr";
  c.sweep_values = {15.0};
  c.output_dir = scratch("sweep").string();
  // A pump too weak for a resonance fails every point without aborting.
  c.pump_power_mw.reset();
  c.pump_rabi_mhz = 1e-6;
  c.sweep_values = {10.0, 20.0};
  const RunResult r = run_command("sweep", c, 2);
  CHECK(r.failed_points == 2);
  const auto rows = read_csv(fs::path(c.output_dir) / "sweep.csv");
  REQUIRE(rows.size() == 3);
  CHECK(rows[1][4].rfind("failed", 0) == 0);
  CHECK(read_json(fs::path(c.output_dir) / "manifest.json")["diagnostics"]["converged"] == false);

  RunConfig d = preset("fig3a").config;
  d.sweep_values = {0.0, 350.0};
  d.output_dir = scratch("sweep_d").string();
  run_command("sweep", d, 1);
  const auto drows = read_csv(fs::path(d.output_dir) / "sweep.csv");
  CHECK(drows[0] == std::vector<std::string>{"axis", "value", "quantity", "result", "status"});
  bool found = false;
  for (const auto& row : drows) {
    if (row[1] == "350" && row[2] == "delay_s") {
      CHECK(rel_diff(std::stod(row[3]), 4.1e-6) < 0.1);
      found = true;
    }
  }
  CHECK(found);

  RunConfig missing = default_config();
  missing.output_dir = scratch("sweep_missing").string();
  CHECK_THROWS_AS(run_command("sweep", missing, 1), ConfigError);
  CHECK_THROWS_AS(run_command("plot", missing, 1), ConfigError);
}

TEST_CASE("outputs are byte-identical across runs and thread counts") {
  RunConfig c = preset("fig7").config;
  c.sweep_values = {0.5, 2.0};
  const fs::path one = scratch("det1"), four = scratch("det4");
  c.output_dir = one.string();
  const RunResult a = run_command("sweep", c, 1);
  c.output_dir = four.string();
  const RunResult b = run_command("sweep", c, 4);
  REQUIRE(a.artifacts == b.artifacts);
  for (const auto& f : a.artifacts) {
    const std::string first = slurp(one / f);
    CHECK(!first.empty());
    CHECK(first == slurp(four / f));
  }
}

TEST_CASE("number formatting") {
  CHECK(csv_number(0.1) == "0.10000000000000001");
  CHECK(csv_number(2.0) == "2");
  CHECK(csv_number(std::numeric_limits<double>::infinity()) == "inf");
  CHECK(std::stod(csv_number(1.0 / 3.0)) == 1.0 / 3.0);
}

#ifdef EITSIM_CLI_PATH
TEST_CASE("command-line exit codes") {
  const std::string exe = EITSIM_CLI_PATH;
  const std::string out = scratch("exe").string();
  auto run = [&](const std::string& args) {
    const int status = std::system((exe + " " + args + " > /dev/null 2>&1").c_str());
    return WEXITSTATUS(status);
  };
  CHECK(run("resonance --out " + out) == 0);
  CHECK(fs::exists(fs::path(out) / "manifest.json"));
  CHECK(run("resonance --set pressure_torr=-1 --out " + out) == 1);
  CHECK(run("resonance --set no_such_key=1 --out " + out) == 1);
  CHECK(run("resonance --preset nope --out " + out) == 1);
  CHECK(run("--bogus-flag") == 1);
  CHECK(run("resonance --set pump.rabi_mhz=0.000001 --out " + out) == 1);
  CHECK(run("resonance --set numerics.doppler_method=gauss_hermite --out " +
            out) == 2);
  CHECK(run("sweep --preset fig3b --values 0,100 --out " + out) == 0);
  CHECK(run("run --preset fig5 --values 0 --out " + out) == 0);
  CHECK(run("run --out " + out) == 1);
  CHECK(run("--list-keys") == 0);
  CHECK(run("--list-presets") == 0);
  CHECK(run("") == 1);
}
#endif
