#include <CLI11.hpp>
#include <filesystem>
#include <iostream>
#include <string>

#include "infoflux/experiment.hpp"
#include "infoflux/version.hpp"

namespace {

using namespace infoflux;

struct CliOptions {
  std::string engine = "circuit";
  int n = 8;
  std::uint64_t target = 0;
  int ns = 1;
  int samples = 10000;
  std::uint64_t seed = 1;
  int grid = 200;
  double epsilon = 0.2;
  double energy = 1.0;
  double dt = 0.0;
  int kmax = -1;
  double t1 = 0.0;
  double t2 = -1.0;
  std::string out;
  std::string format = "csv";
  std::string outputs = "trajectory,flow,leakage";
  int threads = 0;
  bool serial = false;
};

void add_common_flags(CLI::App* cmd, CliOptions& opt) {
  cmd->add_option("--n", opt.n, "register size in qubits");
  cmd->add_option("--target", opt.target, "marked basis index");
  cmd->add_option("--ns", opt.ns, "subsystem size in qubits");
  cmd->add_option("--samples", opt.samples, "state pairs per time point");
  cmd->add_option("--seed", opt.seed, "64-bit sampling seed");
  cmd->add_option("--grid", opt.grid, "time-grid points (continuous engines)");
  cmd->add_option("--epsilon", opt.epsilon, "adiabatic error parameter");
  cmd->add_option("--energy", opt.energy, "analog Hamiltonian scale");
  cmd->add_option("--dt", opt.dt, "adiabatic integration step (0 = automatic)");
  cmd->add_option("--kmax", opt.kmax, "circuit iteration count (-1 = optimal)");
  cmd->add_option("--t1", opt.t1, "interval start");
  cmd->add_option("--t2", opt.t2, "interval end (-1 = full run)");
  cmd->add_option("--out", opt.out, "output path");
  cmd->add_option("--format", opt.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--outputs", opt.outputs,
                  "comma list of trajectory,flow,leakage,entanglement");
  cmd->add_option("--threads", opt.threads, "worker threads (0 = runtime default)");
  cmd->add_flag("--serial", opt.serial, "disable the parallel kernels");
}

ExperimentConfig to_config(const CliOptions& opt) {
  ExperimentConfig config;
  if (opt.engine == "circuit") {
    config.engine.kind = EngineKind::Circuit;
  } else if (opt.engine == "analog") {
    config.engine.kind = EngineKind::Analog;
  } else if (opt.engine == "adiabatic") {
    config.engine.kind = EngineKind::Adiabatic;
  } else {
    throw std::invalid_argument("config.engine: unknown engine '" + opt.engine + "'");
  }
  config.engine.n = opt.n;
  config.engine.target = opt.target;
  config.engine.energy = opt.energy;
  config.engine.epsilon = opt.epsilon;
  config.engine.dt = opt.dt;
  config.engine.iterations = opt.kmax;
  config.n_s = opt.ns;
  config.samples = opt.samples;
  config.seed = opt.seed;
  config.grid_points = opt.grid;
  config.t1 = opt.t1;
  config.t2 = opt.t2;
  config.format = opt.format == "json" ? DatasetFormat::Json : DatasetFormat::Csv;
  config.out_path = opt.out;

  config.outputs = OutputSelection{false, false, false, false};
  std::string token;
  std::stringstream ss(opt.outputs);
  while (std::getline(ss, token, ',')) {
    if (token == "trajectory") {
      config.outputs.trajectory = true;
    } else if (token == "flow") {
      config.outputs.flow = true;
    } else if (token == "leakage") {
      config.outputs.leakage = true;
    } else if (token == "entanglement") {
      config.outputs.entanglement = true;
    } else if (!token.empty()) {
      throw std::invalid_argument("config.outputs: unknown output '" + token + "'");
    }
  }
  return config;
}

void apply_execution(const CliOptions& opt) {
  set_default_exec(opt.serial ? Exec::Serial : Exec::Parallel);
  set_worker_count(opt.threads);
}

int run_one(const ExperimentConfig& config) {
  const Dataset dataset = run_and_write(config);
  std::cout << "wrote " << config.out_path << " (" << dataset.rows.size() << " rows, run time "
            << format_double(dataset.run_time) << ")\n";
  return 0;
}

std::string preset_path(const std::string& stem, const std::string& label,
                        const std::string& ext, bool single) {
  return single ? stem + "." + ext : stem + "_" + label + "." + ext;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"infoflux: information flow and leakage for amplitude-amplification dynamics"};
  app.set_version_flag("--version", std::string(infoflux::kVersion));
  app.require_subcommand(1);

  CliOptions run_opt;
  CLI::App* run_cmd = app.add_subcommand("run", "run one configured experiment");
  run_cmd->add_option("--engine", run_opt.engine, "circuit, analog or adiabatic")
      ->check(CLI::IsMember({"circuit", "analog", "adiabatic"}));
  add_common_flags(run_cmd, run_opt);

  CliOptions preset_opt;
  std::string preset_name;
  CLI::App* preset_cmd = app.add_subcommand("preset", "run a figure-reproduction preset");
  preset_cmd->add_option("name", preset_name, "fig2a, fig2b, fig2c, fig3 or fig4")->required();
  preset_opt.out = "";
  add_common_flags(preset_cmd, preset_opt);

  CLI::App* selftest_cmd = app.add_subcommand("selftest", "run the invariant battery");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run_cmd->parsed()) {
      apply_execution(run_opt);
      if (run_opt.out.empty()) {
        std::cerr << "error: config.out: no output path given\n";
        return 1;
      }
      return run_one(to_config(run_opt));
    }
    if (preset_cmd->parsed()) {
      apply_execution(preset_opt);
      std::vector<ExperimentConfig> configs = infoflux::preset_configs(preset_name);
      const bool single = configs.size() == 1;
      const std::string ext = preset_opt.format == "json" ? "json" : "csv";
      std::string stem = preset_opt.out.empty() ? preset_name : preset_opt.out;
      if (const auto dot = stem.rfind('.');
          dot != std::string::npos && dot > stem.rfind('/') + 0) {
        stem = stem.substr(0, dot);
      }
      for (ExperimentConfig& config : configs) {
        // apply CLI overrides that differ from the preset defaults
        if (preset_cmd->count("--samples") > 0) config.samples = preset_opt.samples;
        if (preset_cmd->count("--seed") > 0) config.seed = preset_opt.seed;
        if (preset_cmd->count("--grid") > 0) config.grid_points = preset_opt.grid;
        if (preset_cmd->count("--n") > 0) config.engine.n = preset_opt.n;
        if (preset_cmd->count("--target") > 0) config.engine.target = preset_opt.target;
        if (preset_cmd->count("--ns") > 0) config.n_s = preset_opt.ns;
        if (preset_cmd->count("--epsilon") > 0) config.engine.epsilon = preset_opt.epsilon;
        if (preset_cmd->count("--energy") > 0) config.engine.energy = preset_opt.energy;
        if (preset_cmd->count("--kmax") > 0) config.engine.iterations = preset_opt.kmax;
        if (preset_cmd->count("--dt") > 0) config.engine.dt = preset_opt.dt;
        config.format = preset_opt.format == "json" ? DatasetFormat::Json : DatasetFormat::Csv;
        config.out_path = preset_path(stem, config.label, ext, single);
        run_one(config);
      }
      return 0;
    }
    if (selftest_cmd->parsed()) {
      return infoflux::run_selftest(std::cout) ? 0 : 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
