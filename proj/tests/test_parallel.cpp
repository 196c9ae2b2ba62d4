#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <memory>
#include <vector>

#include "infoflux/entangle.hpp"
#include "infoflux/infoflow.hpp"

using namespace infoflux;

namespace {

std::unique_ptr<Engine> small_engine(EngineKind kind, int n) {
  EngineParams p;
  p.kind = kind;
  p.n = n;
  p.target = 0;
  return make_engine(p);
}

}  // namespace

TEST_CASE("parallel_for covers every index exactly once") {
  std::vector<int> hits(257, 0);
  parallel_for(hits.size(), Exec::Parallel, [&](std::size_t i) { hits[i] += 1; });
  for (int h : hits) CHECK(h == 1);
  parallel_for(hits.size(), Exec::Serial, [&](std::size_t i) { hits[i] += 1; });
  for (int h : hits) CHECK(h == 2);
}

TEST_CASE("flow series: serial and parallel runs are bit-identical") {
  for (EngineKind kind : {EngineKind::Circuit, EngineKind::Analog}) {
    const auto engine = small_engine(kind, 4);
    const std::vector<double> grid = engine_grid(*engine, 11);
    FlowOptions serial, parallel;
    serial.samples = parallel.samples = 200;
    serial.seed = parallel.seed = 4;
    serial.exec = Exec::Serial;
    parallel.exec = Exec::Parallel;
    const FlowSeries a = compute_flow_series(*engine, 1, grid, serial);
    const FlowSeries b = compute_flow_series(*engine, 1, grid, parallel);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      CHECK(a.records[i].sigma == b.records[i].sigma);
      CHECK(a.records[i].p_guess_star == b.records[i].p_guess_star);
      CHECK(a.records[i].sigma_tilde == b.records[i].sigma_tilde);
      CHECK(a.records[i].leakage == b.records[i].leakage);
      CHECK(a.records[i].argmax_index == b.records[i].argmax_index);
      CHECK(a.records[i].proposition_residual == b.records[i].proposition_residual);
    }
  }
}

TEST_CASE("flow series: result independent of the worker count") {
  const auto engine = small_engine(EngineKind::Analog, 5);
  const std::vector<double> grid = engine_grid(*engine, 9);
  FlowOptions options;
  options.samples = 150;
  options.seed = 8;
  options.exec = Exec::Parallel;

  set_worker_count(1);
  const FlowSeries one = compute_flow_series(*engine, 2, grid, options);
  set_worker_count(3);
  const FlowSeries three = compute_flow_series(*engine, 2, grid, options);
  set_worker_count(0);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    CHECK(one.records[i].sigma == three.records[i].sigma);
    CHECK(one.records[i].leakage == three.records[i].leakage);
  }
}

TEST_CASE("channel series: serial and parallel snapshots identical") {
  const auto engine = small_engine(EngineKind::Analog, 4);
  const std::vector<double> times = engine_grid(*engine, 7);
  const auto serial = channel_series(*engine, times, 2, Exec::Serial);
  const auto parallel = channel_series(*engine, times, 2, Exec::Parallel);
  for (std::size_t i = 0; i < times.size(); ++i) {
    for (std::size_t k = 0; k < serial[i].basis_images.size(); ++k) {
      CHECK((serial[i].basis_images[k] - parallel[i].basis_images[k]).cwiseAbs().maxCoeff() ==
            0.0);
    }
  }
}

TEST_CASE("entanglement series: serial and parallel identical") {
  const auto engine = small_engine(EngineKind::Circuit, 5);
  const std::vector<double> grid = engine_grid(*engine, 0);
  const auto serial = entanglement_series(*engine, grid, Exec::Serial);
  const auto parallel = entanglement_series(*engine, grid, Exec::Parallel);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    CHECK(serial[i].c_bipartite == parallel[i].c_bipartite);
    CHECK(serial[i].e_multipartite == parallel[i].e_multipartite);
  }
}

TEST_CASE("default execution policy is settable") {
  const Exec before = default_exec();
  set_default_exec(Exec::Serial);
  CHECK(default_exec() == Exec::Serial);
  set_default_exec(before);
}
