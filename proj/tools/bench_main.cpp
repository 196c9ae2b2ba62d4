#include <chrono>
#include <cmath>
#include <cstdio>

#include "infoflux/entangle.hpp"
#include "infoflux/infoflow.hpp"
#include "infoflux/reference.hpp"

// Wall-clock comparison of the parallel kernels against their serial twins
// (identical arithmetic, so the deviation columns must read 0) and of the
// production algebra against the dense reference paths.

namespace {

using namespace infoflux;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

void print_row(const char* name, double serial_s, double parallel_s, double deviation) {
  std::printf("%-46s %9.3f %9.3f %8.2fx   %.3e\n", name, serial_s * 1e3, parallel_s * 1e3,
              parallel_s > 0 ? serial_s / parallel_s : 0.0, deviation);
}

EngineParams engine_params(EngineKind kind, int n) {
  EngineParams p;
  p.kind = kind;
  p.n = n;
  p.target = 0;
  return p;
}

void bench_flow(const Engine& engine, int n_s, int samples, int grid_points, const char* name) {
  const std::vector<double> grid = engine_grid(engine, grid_points);
  FlowOptions options;
  options.samples = samples;
  options.seed = 99;

  options.exec = Exec::Serial;
  auto start = Clock::now();
  const FlowSeries serial = compute_flow_series(engine, n_s, grid, options);
  const double serial_s = seconds_since(start);

  options.exec = Exec::Parallel;
  start = Clock::now();
  const FlowSeries parallel = compute_flow_series(engine, n_s, grid, options);
  const double parallel_s = seconds_since(start);

  double deviation = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    deviation = std::max(deviation,
                         std::abs(serial.records[i].sigma - parallel.records[i].sigma));
    deviation = std::max(deviation,
                         std::abs(serial.records[i].leakage - parallel.records[i].leakage));
  }
  print_row(name, serial_s, parallel_s, deviation);
}

void bench_channel_series(const Engine& engine, int n_s, int count, const char* name) {
  const std::vector<double> times = engine_grid(engine, count);
  auto start = Clock::now();
  const auto serial = channel_series(engine, times, n_s, Exec::Serial);
  const double serial_s = seconds_since(start);
  start = Clock::now();
  const auto parallel = channel_series(engine, times, n_s, Exec::Parallel);
  const double parallel_s = seconds_since(start);
  double deviation = 0.0;
  for (std::size_t i = 0; i < serial.size(); ++i) {
    for (std::size_t k = 0; k < serial[i].basis_images.size(); ++k) {
      deviation = std::max(
          deviation,
          (serial[i].basis_images[k] - parallel[i].basis_images[k]).cwiseAbs().maxCoeff());
    }
  }
  print_row(name, serial_s, parallel_s, deviation);
}

void bench_entanglement(const Engine& engine, int grid_points, const char* name) {
  const std::vector<double> grid = engine_grid(engine, grid_points);
  auto start = Clock::now();
  const auto serial = entanglement_series(engine, grid, Exec::Serial);
  const double serial_s = seconds_since(start);
  start = Clock::now();
  const auto parallel = entanglement_series(engine, grid, Exec::Parallel);
  const double parallel_s = seconds_since(start);
  double deviation = 0.0;
  for (std::size_t i = 0; i < serial.size(); ++i) {
    deviation = std::max(deviation, std::abs(serial[i].e_multipartite - parallel[i].e_multipartite));
  }
  print_row(name, serial_s, parallel_s, deviation);
}

void bench_adiabatic_step(int n) {
  EngineParams params = engine_params(EngineKind::Adiabatic, n);
  AdiabaticEngine engine(params);
  const std::vector<double> captures{engine.run_time()};
  const PureState start_state = uniform_superposition(n);

  auto start = Clock::now();
  const Operator dense_u = reference::global_unitary(engine, captures)[0];
  const StateVector dense_final = dense_u * start_state.amps;
  const double dense_s = seconds_since(start);

  start = Clock::now();
  const StateVector fast_final = engine.propagate(start_state.amps, captures)[0].col(0);
  const double fast_s = seconds_since(start);

  const double deviation = (dense_final - fast_final).cwiseAbs().maxCoeff();
  char name[64];
  std::snprintf(name, sizeof(name), "adiabatic sweep, dense vs rank-2 step (n=%d)", n);
  print_row(name, dense_s, fast_s, deviation);
}

void bench_multipartite(int n) {
  SplitMix64 rng(17);
  StateVector amps(Eigen::Index{1} << n);
  for (Eigen::Index i = 0; i < amps.size(); ++i) amps(i) = Complex(rng.normal(), rng.normal());
  amps /= amps.norm();
  const PureState psi{n, amps};

  auto start = Clock::now();
  double direct = 0.0;
  for (int rep = 0; rep < 5; ++rep) direct = reference::multipartite_concurrence_direct(psi);
  const double direct_s = seconds_since(start) / 5;

  start = Clock::now();
  double halved = 0.0;
  for (int rep = 0; rep < 5; ++rep) halved = multipartite_concurrence(psi);
  const double halved_s = seconds_since(start) / 5;

  char name[64];
  std::snprintf(name, sizeof(name), "multipartite sum, direct vs paired (n=%d)", n);
  print_row(name, direct_s, halved_s, std::abs(direct - halved));
}

}  // namespace

int main() {
  std::printf("workers: %d\n", worker_count());
  std::printf("%-46s %9s %9s %9s   %s\n", "kernel", "serial/ms", "parallel/ms", "speedup",
              "max deviation");

  CircuitEngine circuit{engine_params(EngineKind::Circuit, 8)};
  AnalogEngine analog{engine_params(EngineKind::Analog, 8)};
  AdiabaticEngine adiabatic{engine_params(EngineKind::Adiabatic, 8)};

  bench_flow(circuit, 1, 2000, 0, "flow series, circuit n=8 n_S=1, 2000 pairs");
  bench_flow(analog, 2, 500, 40, "flow series, analog n=8 n_S=2, 500 pairs");
  bench_flow(adiabatic, 1, 500, 40, "flow series, adiabatic n=8 n_S=1, 500 pairs");
  bench_channel_series(analog, 2, 100, "channel snapshots, analog n=8 n_S=2, 100 t");
  bench_entanglement(circuit, 0, "entanglement series, circuit n=8");
  bench_adiabatic_step(6);
  bench_multipartite(8);
  return 0;
}
