#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "infoflux/experiment.hpp"

using namespace infoflux;
namespace fs = std::filesystem;

namespace {

ExperimentConfig small_config() {
  ExperimentConfig config;
  config.engine.kind = EngineKind::Circuit;
  config.engine.n = 4;
  config.engine.target = 0;
  config.n_s = 1;
  config.samples = 60;
  config.seed = 12;
  config.grid_points = 10;
  return config;
}

std::string temp_path(const std::string& name) {
  return (fs::temp_directory_path() / name).string();
}

std::string file_bytes(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int run_cli(const std::string& args) {
  const std::string command = std::string(INFOFLUX_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  return std::system(command.c_str());
}

bool config_equal(const ExperimentConfig& a, const ExperimentConfig& b) {
  return a.engine.kind == b.engine.kind && a.engine.n == b.engine.n &&
         a.engine.target == b.engine.target && a.engine.energy == b.engine.energy &&
         a.engine.epsilon == b.engine.epsilon && a.engine.dt == b.engine.dt &&
         a.engine.iterations == b.engine.iterations && a.n_s == b.n_s && a.t1 == b.t1 &&
         a.t2 == b.t2 && a.grid_points == b.grid_points && a.samples == b.samples &&
         a.seed == b.seed && a.outputs.trajectory == b.outputs.trajectory &&
         a.outputs.flow == b.outputs.flow && a.outputs.leakage == b.outputs.leakage &&
         a.outputs.entanglement == b.outputs.entanglement && a.label == b.label;
}

}  // namespace

TEST_CASE("presets: shapes and parameters") {
  const auto fig2a = preset_configs("fig2a");
  REQUIRE(fig2a.size() == 1);
  CHECK(fig2a[0].engine.kind == EngineKind::Circuit);
  CHECK(fig2a[0].engine.n == 8);
  CHECK(fig2a[0].n_s == 1);
  CHECK(fig2a[0].samples == 10000);
  CHECK(fig2a[0].outputs.flow);
  CHECK(fig2a[0].outputs.leakage);
  CHECK_FALSE(fig2a[0].outputs.entanglement);

  CHECK(preset_configs("fig2b")[0].engine.kind == EngineKind::Analog);
  CHECK(preset_configs("fig2c")[0].engine.kind == EngineKind::Adiabatic);

  const auto fig3 = preset_configs("fig3");
  REQUIRE(fig3.size() == 8);
  int circuit_count = 0;
  for (const auto& c : fig3) {
    circuit_count += c.engine.kind == EngineKind::Circuit ? 1 : 0;
    CHECK(c.n_s >= 1);
    CHECK(c.n_s <= 4);
    CHECK(c.outputs.flow);
    CHECK_FALSE(c.outputs.entanglement);
  }
  CHECK(circuit_count == 4);

  const auto fig4 = preset_configs("fig4");
  REQUIRE(fig4.size() == 3);
  for (const auto& c : fig4) {
    CHECK(c.outputs.entanglement);
    CHECK_FALSE(c.outputs.flow);
    CHECK_FALSE(c.outputs.leakage);
  }

  CHECK_THROWS_AS((void)preset_configs("fig9"), std::invalid_argument);
}

TEST_CASE("validation names the offending field") {
  ExperimentConfig config = small_config();
  config.samples = 0;
  try {
    validate(config);
    FAIL("expected an exception");
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("samples") != std::string::npos);
  }
  config = small_config();
  config.n_s = 4;
  CHECK_THROWS_AS(validate(config), std::invalid_argument);
  config = small_config();
  config.engine.n = 13;
  CHECK_THROWS_AS(validate(config), std::invalid_argument);
}

TEST_CASE("run_experiment: columns follow the output selection") {
  ExperimentConfig config = small_config();
  config.outputs = {true, true, true, false};
  const Dataset full = run_experiment(config);
  CHECK(full.columns == std::vector<std::string>{"t", "t_normalized", "P_target", "sigma",
                                                 "p_guess_star", "sigma_tilde",
                                                 "leakage_cumulative"});
  CHECK(full.rows.size() == 4);  // circuit grid: one row per iteration 0..3 (optimal k)
  CHECK(full.rows.back()[1] == doctest::Approx(1.0).epsilon(1e-15));

  config.outputs = {true, false, false, true};
  const Dataset ent = run_experiment(config);
  CHECK(ent.columns == std::vector<std::string>{"t", "t_normalized", "P_target", "C_bipartite",
                                                "E_multipartite"});
}

TEST_CASE("csv and json emissions carry identical values") {
  ExperimentConfig config = small_config();
  config.out_path = temp_path("infoflux_test.csv");
  config.format = DatasetFormat::Csv;
  const Dataset via_csv = run_and_write(config);

  config.out_path = temp_path("infoflux_test.json");
  config.format = DatasetFormat::Json;
  const Dataset via_json = run_and_write(config);

  const Dataset csv_back = read_csv(temp_path("infoflux_test.csv"));
  const Dataset json_back = read_json(temp_path("infoflux_test.json"));

  REQUIRE(csv_back.rows.size() == json_back.rows.size());
  REQUIRE(csv_back.columns == json_back.columns);
  for (std::size_t i = 0; i < csv_back.rows.size(); ++i) {
    for (std::size_t c = 0; c < csv_back.columns.size(); ++c) {
      CHECK(csv_back.rows[i][c] == json_back.rows[i][c]);  // bitwise round trip
      CHECK(csv_back.rows[i][c] == via_csv.rows[i][c]);
    }
  }
  CHECK(config_equal(json_back.config, via_json.config));
  CHECK(config_equal(csv_back.config, via_json.config));
  CHECK(json_back.version == std::string("0.1.0"));
}

TEST_CASE("determinism: identical seeds give byte-identical files") {
  ExperimentConfig config = small_config();
  config.format = DatasetFormat::Csv;

  config.out_path = temp_path("infoflux_det_a.csv");
  run_and_write(config);
  config.out_path = temp_path("infoflux_det_b.csv");
  run_and_write(config);
  CHECK(file_bytes(temp_path("infoflux_det_a.csv")) ==
        file_bytes(temp_path("infoflux_det_b.csv")));

  // worker count must not matter either
  set_default_exec(Exec::Serial);
  config.out_path = temp_path("infoflux_det_serial.csv");
  run_and_write(config);
  set_default_exec(Exec::Parallel);
  set_worker_count(3);
  config.out_path = temp_path("infoflux_det_parallel.csv");
  run_and_write(config);
  set_worker_count(0);
  const std::string serial_bytes = file_bytes(temp_path("infoflux_det_serial.csv"));
  const std::string parallel_bytes = file_bytes(temp_path("infoflux_det_parallel.csv"));
  // headers are identical configs, so compare whole files
  CHECK(serial_bytes == parallel_bytes);
}

TEST_CASE("shortest round-trip formatting") {
  for (double v : {0.1, 1.0 / 3.0, 123456.789, 1e-17, -0.0, 2.5e300}) {
    const std::string repr = format_double(v);
    CHECK(std::strtod(repr.c_str(), nullptr) == v);
  }
  CHECK(format_double(0.5) == "0.5");
  CHECK(format_double(1.0) == "1");
}

TEST_CASE("cli: run, validation failure, preset, selftest") {
  const std::string out = temp_path("infoflux_cli_out.csv");
  CHECK(run_cli("run --engine circuit --n 4 --ns 1 --samples 30 --seed 7 --out " + out) == 0);
  CHECK(fs::exists(out));

  CHECK(run_cli("run --engine circuit --n 4 --ns 1 --samples 0 --out " + out) != 0);
  CHECK(run_cli("run --engine circuit --n 4 --ns 1 --samples 30") != 0);  // no --out
  CHECK(run_cli("run --engine warp --n 4 --out " + out) != 0);
  CHECK(run_cli("run --engine circuit --n 13 --ns 1 --out " + out) != 0);  // above the cap
  CHECK(run_cli("run --engine circuit --n 4 --ns 1 --samples 30 --out /nonexistent_dir/x.csv") !=
        0);

  const std::string preset_stem = temp_path("infoflux_cli_fig2a");
  CHECK(run_cli("preset fig2a --n 4 --samples 25 --grid 8 --out " + preset_stem + ".csv") == 0);
  CHECK(fs::exists(preset_stem + ".csv"));

  CHECK(run_cli("selftest") == 0);
}

TEST_CASE("cli: environment cap override") {
  const std::string out = temp_path("infoflux_cli_cap.csv");
  const std::string base = std::string(INFOFLUX_CLI_PATH) +
                           " run --engine circuit --n 4 --ns 1 --samples 10 --out " + out +
                           " >/dev/null 2>&1";
  CHECK(std::system(base.c_str()) == 0);
  const std::string lowered = "INFOFLUX_MAX_QUBITS=3 " + base;
  CHECK(std::system(lowered.c_str()) != 0);
}
