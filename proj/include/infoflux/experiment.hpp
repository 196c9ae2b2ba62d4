#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "infoflux/engines.hpp"
#include "infoflux/infoflow.hpp"

// Experiment runner: configures an engine, drives the flow / leakage /
// entanglement pipelines over a time grid, and persists reproducible
// datasets (CSV with # metadata lines, or JSON).

namespace infoflux {

enum class DatasetFormat { Csv, Json };

struct OutputSelection {
  bool trajectory = true;   // P_target column
  bool flow = true;         // sigma, p_guess_star columns
  bool leakage = true;      // sigma_tilde, leakage_cumulative columns
  bool entanglement = false;  // C_bipartite, E_multipartite columns
};

struct ExperimentConfig {
  EngineParams engine;
  int n_s = 1;
  double t1 = 0.0;
  double t2 = -1.0;  // < 0 means the full run
  int grid_points = 200;
  int samples = 10000;
  std::uint64_t seed = 1;
  OutputSelection outputs;
  DatasetFormat format = DatasetFormat::Csv;
  std::string out_path;
  std::string label;  // dataset tag, set by presets
};

// Throws std::invalid_argument naming the offending field.
void validate(const ExperimentConfig& config);

struct Dataset {
  std::string version;
  ExperimentConfig config;
  double run_time = 0.0;
  double effective_dt = 0.0;  // adiabatic integration step actually used
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

// Compute the dataset in memory (no file output).
Dataset run_experiment(const ExperimentConfig& config);

// Compute and persist to config.out_path in config.format; returns the
// dataset. Throws std::runtime_error when the path cannot be written.
Dataset run_and_write(const ExperimentConfig& config);

void write_csv(const Dataset& dataset, const std::string& path);
void write_json(const Dataset& dataset, const std::string& path);
Dataset read_json(const std::string& path);
Dataset read_csv(const std::string& path);

// Paper-figure reproduction configurations: fig2a, fig2b, fig2c (one each),
// fig3 (eight: circuit and analog across subsystem sizes 1..4), fig4 (three:
// entanglement for every engine).
std::vector<ExperimentConfig> preset_configs(const std::string& name);

// Shortest decimal representation that parses back to the same double.
std::string format_double(double value);

// Quick invariant battery used by the `selftest` subcommand; prints one line
// per check and returns true when all pass.
bool run_selftest(std::ostream& out);

}  // namespace infoflux
