#include "infoflux/experiment.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "infoflux/entangle.hpp"
#include "infoflux/version.hpp"

namespace infoflux {

namespace {

using nlohmann::json;

const char* kind_name(EngineKind kind) {
  switch (kind) {
    case EngineKind::Circuit:
      return "circuit";
    case EngineKind::Analog:
      return "analog";
    case EngineKind::Adiabatic:
      return "adiabatic";
  }
  return "?";
}

EngineKind kind_from_name(const std::string& name) {
  if (name == "circuit") return EngineKind::Circuit;
  if (name == "analog") return EngineKind::Analog;
  if (name == "adiabatic") return EngineKind::Adiabatic;
  throw std::invalid_argument("engine: unknown kind '" + name + "'");
}

json config_to_json(const ExperimentConfig& c) {
  json outputs = json::array();
  if (c.outputs.trajectory) outputs.push_back("trajectory");
  if (c.outputs.flow) outputs.push_back("flow");
  if (c.outputs.leakage) outputs.push_back("leakage");
  if (c.outputs.entanglement) outputs.push_back("entanglement");
  return json{{"engine", kind_name(c.engine.kind)},
              {"n", c.engine.n},
              {"target", c.engine.target},
              {"energy", c.engine.energy},
              {"epsilon", c.engine.epsilon},
              {"dt", c.engine.dt},
              {"iterations", c.engine.iterations},
              {"ns", c.n_s},
              {"t1", c.t1},
              {"t2", c.t2},
              {"grid_points", c.grid_points},
              {"samples", c.samples},
              {"seed", c.seed},
              {"outputs", outputs},
              {"label", c.label}};
}

ExperimentConfig config_from_json(const json& j) {
  ExperimentConfig c;
  c.engine.kind = kind_from_name(j.at("engine").get<std::string>());
  c.engine.n = j.at("n").get<int>();
  c.engine.target = j.at("target").get<std::uint64_t>();
  c.engine.energy = j.at("energy").get<double>();
  c.engine.epsilon = j.at("epsilon").get<double>();
  c.engine.dt = j.at("dt").get<double>();
  c.engine.iterations = j.at("iterations").get<int>();
  c.n_s = j.at("ns").get<int>();
  c.t1 = j.at("t1").get<double>();
  c.t2 = j.at("t2").get<double>();
  c.grid_points = j.at("grid_points").get<int>();
  c.samples = j.at("samples").get<int>();
  c.seed = j.at("seed").get<std::uint64_t>();
  c.outputs = OutputSelection{false, false, false, false};
  for (const auto& o : j.at("outputs")) {
    const std::string name = o.get<std::string>();
    if (name == "trajectory") c.outputs.trajectory = true;
    if (name == "flow") c.outputs.flow = true;
    if (name == "leakage") c.outputs.leakage = true;
    if (name == "entanglement") c.outputs.entanglement = true;
  }
  c.label = j.value("label", "");
  return c;
}

// functional forms this library pins; recorded in every dataset header
json flags_json() {
  return json{{"adiabatic_schedule", "arctan-shifted-tangent-argument"},
              {"multipartite_concurrence_exponent", "+1/2"},
              {"leakage_rescale_constant", kLeakageRescale}};
}

}  // namespace

void validate(const ExperimentConfig& config) {
  if (config.engine.n < 1 || config.engine.n > max_register_qubits()) {
    throw std::invalid_argument("config.n: must be in [1, " +
                                std::to_string(max_register_qubits()) + "]");
  }
  if (config.engine.target >= (std::uint64_t{1} << config.engine.n)) {
    throw std::invalid_argument("config.target: out of range for n qubits");
  }
  if (config.n_s < 1 || config.n_s >= config.engine.n) {
    throw std::invalid_argument("config.ns: must be in [1, n-1]");
  }
  if (config.samples < 1) throw std::invalid_argument("config.samples: must be positive");
  if (config.grid_points < 2) throw std::invalid_argument("config.grid_points: must be >= 2");
  if (config.engine.energy <= 0.0) throw std::invalid_argument("config.energy: must be positive");
  if (config.engine.epsilon <= 0.0 || config.engine.epsilon >= 1.0) {
    throw std::invalid_argument("config.epsilon: must lie in (0, 1)");
  }
  if (config.t1 < 0.0) throw std::invalid_argument("config.t1: must be nonnegative");
  if (config.t2 >= 0.0 && config.t2 < config.t1) {
    throw std::invalid_argument("config.t2: must be >= t1");
  }
}

Dataset run_experiment(const ExperimentConfig& config) {
  validate(config);
  const std::unique_ptr<Engine> engine = make_engine(config.engine);
  const double total = engine->run_time();
  const double t2 = config.t2 < 0.0 ? total : config.t2;
  if (t2 > total * (1.0 + 1e-12)) throw std::invalid_argument("config.t2: beyond the run time");

  std::vector<double> grid;
  if (engine->discrete()) {
    const long k1 = std::lround(std::ceil(config.t1 - 1e-9));
    const long k2 = std::lround(std::floor(t2 + 1e-9));
    for (long k = k1; k <= k2; ++k) grid.push_back(static_cast<double>(k));
  } else {
    grid.resize(static_cast<std::size_t>(config.grid_points));
    for (int i = 0; i < config.grid_points; ++i) {
      const double frac = static_cast<double>(i) / static_cast<double>(config.grid_points - 1);
      grid[static_cast<std::size_t>(i)] = config.t1 + (t2 - config.t1) * frac;
    }
    grid.front() = config.t1;
    grid.back() = t2;  // keep the endpoints exact
  }
  if (grid.size() < 2) throw std::invalid_argument("config.grid_points: grid has fewer than 2 points");

  Dataset dataset;
  dataset.version = kVersion;
  dataset.config = config;
  dataset.run_time = total;
  dataset.effective_dt = engine->params().dt;

  dataset.columns = {"t", "t_normalized"};
  std::vector<std::vector<double>> column_data;
  column_data.emplace_back(grid);
  {
    std::vector<double> normalized(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) normalized[i] = grid[i] / total;
    column_data.push_back(std::move(normalized));
  }

  if (config.outputs.trajectory) {
    const Trajectory traj = engine->trajectory(grid);
    std::vector<double> prob(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
      prob[i] = success_probability(traj.states[i], config.engine.target);
    }
    dataset.columns.push_back("P_target");
    column_data.push_back(std::move(prob));
  }
  if (config.outputs.flow || config.outputs.leakage) {
    FlowOptions options;
    options.samples = config.samples;
    options.seed = config.seed;
    options.exec = default_exec();
    const FlowSeries series = compute_flow_series(*engine, config.n_s, grid, options);
    if (config.outputs.flow) {
      std::vector<double> sigma(grid.size()), pstar(grid.size());
      for (std::size_t i = 0; i < grid.size(); ++i) {
        sigma[i] = series.records[i].sigma;
        pstar[i] = series.records[i].p_guess_star;
      }
      dataset.columns.push_back("sigma");
      column_data.push_back(std::move(sigma));
      dataset.columns.push_back("p_guess_star");
      column_data.push_back(std::move(pstar));
    }
    if (config.outputs.leakage) {
      std::vector<double> tilde(grid.size()), leak(grid.size());
      for (std::size_t i = 0; i < grid.size(); ++i) {
        tilde[i] = series.records[i].sigma_tilde;
        leak[i] = series.records[i].leakage;
      }
      dataset.columns.push_back("sigma_tilde");
      column_data.push_back(std::move(tilde));
      dataset.columns.push_back("leakage_cumulative");
      column_data.push_back(std::move(leak));
    }
  }
  if (config.outputs.entanglement) {
    const std::vector<EntanglementRecord> records =
        entanglement_series(*engine, grid, default_exec());
    std::vector<double> bip(grid.size()), multi(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
      bip[i] = records[i].c_bipartite;
      multi[i] = records[i].e_multipartite;
    }
    dataset.columns.push_back("C_bipartite");
    column_data.push_back(std::move(bip));
    dataset.columns.push_back("E_multipartite");
    column_data.push_back(std::move(multi));
  }

  dataset.rows.resize(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    dataset.rows[i].resize(column_data.size());
    for (std::size_t c = 0; c < column_data.size(); ++c) dataset.rows[i][c] = column_data[c][i];
  }
  return dataset;
}

Dataset run_and_write(const ExperimentConfig& config) {
  Dataset dataset = run_experiment(config);
  if (config.out_path.empty()) throw std::invalid_argument("config.out: no output path given");
  if (config.format == DatasetFormat::Csv) {
    write_csv(dataset, config.out_path);
  } else {
    write_json(dataset, config.out_path);
  }
  return dataset;
}

std::string format_double(double value) {
  char buffer[64];
  const auto result = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, result.ptr);
}

void write_csv(const Dataset& dataset, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_csv: cannot open '" + path + "'");
  out << "# infoflux " << dataset.version << "\n";
  out << "# config: " << config_to_json(dataset.config).dump() << "\n";
  out << "# flags: " << flags_json().dump() << "\n";
  out << "# run_time: " << format_double(dataset.run_time) << "\n";
  out << "# effective_dt: " << format_double(dataset.effective_dt) << "\n";
  for (std::size_t c = 0; c < dataset.columns.size(); ++c) {
    out << dataset.columns[c] << (c + 1 == dataset.columns.size() ? "\n" : ",");
  }
  for (const auto& row : dataset.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      out << format_double(row[c]) << (c + 1 == row.size() ? "\n" : ",");
    }
  }
  if (!out) throw std::runtime_error("write_csv: failed writing '" + path + "'");
}

void write_json(const Dataset& dataset, const std::string& path) {
  json j{{"infoflux_version", dataset.version},
         {"config", config_to_json(dataset.config)},
         {"flags", flags_json()},
         {"run_time", dataset.run_time},
         {"effective_dt", dataset.effective_dt},
         {"columns", dataset.columns},
         {"rows", dataset.rows}};
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_json: cannot open '" + path + "'");
  out << j.dump(2) << "\n";
  if (!out) throw std::runtime_error("write_json: failed writing '" + path + "'");
}

Dataset read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("read_json: cannot open '" + path + "'");
  json j;
  in >> j;
  Dataset dataset;
  dataset.version = j.at("infoflux_version").get<std::string>();
  dataset.config = config_from_json(j.at("config"));
  dataset.run_time = j.at("run_time").get<double>();
  dataset.effective_dt = j.at("effective_dt").get<double>();
  dataset.columns = j.at("columns").get<std::vector<std::string>>();
  dataset.rows = j.at("rows").get<std::vector<std::vector<double>>>();
  return dataset;
}

Dataset read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("read_csv: cannot open '" + path + "'");
  Dataset dataset;
  std::string line;
  bool header_seen = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line.front() == '#') {
      const auto parse_tag = [&line](const char* tag) -> std::string {
        const std::string prefix = std::string("# ") + tag + ": ";
        return line.rfind(prefix, 0) == 0 ? line.substr(prefix.size()) : std::string();
      };
      if (std::string v = parse_tag("config"); !v.empty()) {
        dataset.config = config_from_json(json::parse(v));
      } else if (std::string v2 = parse_tag("run_time"); !v2.empty()) {
        dataset.run_time = std::strtod(v2.c_str(), nullptr);
      } else if (std::string v3 = parse_tag("effective_dt"); !v3.empty()) {
        dataset.effective_dt = std::strtod(v3.c_str(), nullptr);
      } else if (line.rfind("# infoflux ", 0) == 0) {
        dataset.version = line.substr(std::string("# infoflux ").size());
      }
      continue;
    }
    std::stringstream ss(line);
    std::string cell;
    if (!header_seen) {
      while (std::getline(ss, cell, ',')) dataset.columns.push_back(cell);
      header_seen = true;
      continue;
    }
    std::vector<double> row;
    while (std::getline(ss, cell, ',')) row.push_back(std::strtod(cell.c_str(), nullptr));
    dataset.rows.push_back(std::move(row));
  }
  return dataset;
}

std::vector<ExperimentConfig> preset_configs(const std::string& name) {
  const auto base = [](EngineKind kind) {
    ExperimentConfig c;
    c.engine.kind = kind;
    c.engine.n = 8;
    c.engine.target = 0;
    c.n_s = 1;
    c.samples = 10000;
    c.seed = 1;
    c.grid_points = 200;
    return c;
  };
  if (name == "fig2a" || name == "fig2b" || name == "fig2c") {
    const EngineKind kind = name == "fig2a"   ? EngineKind::Circuit
                            : name == "fig2b" ? EngineKind::Analog
                                              : EngineKind::Adiabatic;
    ExperimentConfig c = base(kind);
    c.outputs = {true, true, true, false};
    c.label = name;
    return {c};
  }
  if (name == "fig3") {
    std::vector<ExperimentConfig> configs;
    for (EngineKind kind : {EngineKind::Circuit, EngineKind::Analog}) {
      for (int n_s = 1; n_s <= 4; ++n_s) {
        ExperimentConfig c = base(kind);
        c.n_s = n_s;
        c.outputs = {false, true, true, false};
        c.label = std::string("fig3_") + kind_name(kind) + "_ns" + std::to_string(n_s);
        configs.push_back(std::move(c));
      }
    }
    return configs;
  }
  if (name == "fig4") {
    std::vector<ExperimentConfig> configs;
    for (EngineKind kind : {EngineKind::Circuit, EngineKind::Analog, EngineKind::Adiabatic}) {
      ExperimentConfig c = base(kind);
      c.outputs = {true, false, false, true};
      c.label = std::string("fig4_") + kind_name(kind);
      configs.push_back(std::move(c));
    }
    return configs;
  }
  throw std::invalid_argument("preset: unknown name '" + name + "'");
}

}  // namespace infoflux
