#pragma once

#include <cstdint>
#include <numbers>
#include <vector>

#include "infoflux/parallel.hpp"
#include "infoflux/redyn.hpp"

// Single-shot information accounting for a subsystem under an engine:
// trace-distance discrimination, guessing probability, conditional
// min-entropy, the sampled information flow and its running integrals, and
// the leakage functional in bits.

namespace infoflux {

// Rescaling constant c = 2 / log2(e) = 2 ln 2 between the flow and the
// min-entropy rate.
inline constexpr double kLeakageRescale = 2.0 * std::numbers::ln2;

double trace_distance(const DensityMatrix& a, const DensityMatrix& b);
double guessing_probability(const DensityMatrix& a, const DensityMatrix& b);
double conditional_min_entropy(const DensityMatrix& a, const DensityMatrix& b);  // bits

struct FlowRecord {
  double t = 0.0;
  double sigma = 0.0;         // max over sampled pairs of the distance derivative
  double p_guess_star = 0.0;  // guessing probability of the maximizer's outputs at t
  double sigma_tilde = 0.0;   // running integral of sigma from the grid start
  double leakage = 0.0;       // running leakage in bits from the grid start
  double proposition_residual = 0.0;
  int argmax_index = -1;
  PureState argmax_state0, argmax_state1;
  int sample_count = 0;
};

struct FlowSeries {
  std::vector<double> grid;
  std::vector<FlowRecord> records;
  int n_s = 0;
  std::uint64_t seed = 0;
};

struct FlowOptions {
  int samples = 10000;
  std::uint64_t seed = 1;
  Exec exec = Exec::Parallel;
  // Difference stencil half-width; 0 selects run_time/2000 for continuous
  // engines and one iteration for the circuit. Interior points use a central
  // difference, boundary points fall back to the one-sided difference.
  double stencil = 0.0;
};

// The sampled pair set is a pure function of (seed, sample index) and is
// shared by every grid point, so refining the grid never reshuffles samples
// and series are smooth in t. Ties in the maximization resolve to the lowest
// sample index.
FlowSeries compute_flow_series(const Engine& engine, int n_s, const std::vector<double>& grid,
                               const FlowOptions& options);

FlowRecord information_flow(const Engine& engine, int n_s, double t, int samples,
                            std::uint64_t seed);

// Re-evaluates both sides of the flow / min-entropy-rate identity on the
// record's maximizing pair and returns |lhs - rhs|.
double proposition_check(const Engine& engine, int n_s, const FlowRecord& record);

struct LeakageResult {
  double total_bits = 0.0;
  FlowSeries series;
};

LeakageResult leakage(const Engine& engine, int n_s, double t1, double t2, int grid_points,
                      const FlowOptions& options);

// Standard output grid: one point per iteration for the circuit engine,
// a uniform [0, run_time] grid otherwise.
std::vector<double> engine_grid(const Engine& engine, int grid_points);

}  // namespace infoflux
