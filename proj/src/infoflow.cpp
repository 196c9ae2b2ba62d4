#include "infoflux/infoflow.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace infoflux {

namespace {

// Basis images flattened into real and imaginary coefficient matrices so the
// per-sample recombination is two real mat-vecs.
struct FlatImages {
  Eigen::Index dim = 0;
  Eigen::MatrixXd re, im;  // (dim*dim) x basis_count

  explicit FlatImages(const ChannelSnapshot& snap) {
    dim = Eigen::Index{1} << snap.n_s;
    const Eigen::Index entries = dim * dim;
    const Eigen::Index count = static_cast<Eigen::Index>(snap.basis_images.size());
    re.resize(entries, count);
    im.resize(entries, count);
    for (Eigen::Index k = 0; k < count; ++k) {
      const Operator& img = snap.basis_images[static_cast<std::size_t>(k)];
      for (Eigen::Index i = 0; i < dim; ++i)
        for (Eigen::Index j = 0; j < dim; ++j) {
          re(i * dim + j, k) = img(i, j).real();
          im(i * dim + j, k) = img(i, j).imag();
        }
    }
  }

  // Trace distance between the images of the two states whose difference has
  // the given basis coefficients: half the trace norm of the recombined
  // (Hermitian) difference operator. The caller owns the scratch buffers so
  // the sampling loop stays allocation-free.
  struct Scratch {
    Eigen::VectorXd re, im;
  };

  double distance(Eigen::Ref<const Eigen::VectorXd> coeffs, Scratch& scratch) const {
    scratch.re.noalias() = re * coeffs;
    scratch.im.noalias() = im * coeffs;
    const Eigen::VectorXd& vre = scratch.re;
    const Eigen::VectorXd& vim = scratch.im;
    if (dim == 2) {
      const double mu = 0.5 * (vre(0) + vre(3));
      const double r = std::hypot(0.5 * (vre(0) - vre(3)), std::hypot(vre(1), vim(1)));
      return 0.5 * (std::abs(mu + r) + std::abs(mu - r));
    }
    Operator m(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i)
      for (Eigen::Index j = 0; j < dim; ++j) m(i, j) = Complex(vre(i * dim + j), vim(i * dim + j));
    return 0.5 * trace_norm_hermitian(m);
  }
};

struct Stencil {
  double lower = 0.0, upper = 0.0;  // difference endpoints
};

// Central difference of half-width h clipped to one-sided at the run
// boundaries; the circuit engine always differences forward over one
// iteration.
Stencil make_stencil(double t, double h, double run_time, bool discrete) {
  if (discrete) return {t, t + 1.0};
  double lower = t - h, upper = t + h;
  if (lower < 0.0) {
    lower = t;
    upper = t + h;
  } else if (upper > run_time) {
    lower = t - h;
    upper = t;
  }
  if (lower < 0.0 || upper > run_time) {
    throw std::invalid_argument("flow stencil: run too short for the difference step");
  }
  return {lower, upper};
}

// Identity residual between the sampled flow and the rescaled min-entropy
// rate over the same stencil. The rescaling probability is evaluated at the
// mean-value point of the logarithm over the stencil, which is the exact
// discrete counterpart of the time-local factor, so the residual probes only
// the wiring of the distance / guessing / entropy chain.
double identity_residual(double d_lower, double d_upper, double span) {
  const double lhs = (d_upper - d_lower) / span;
  const double p_lower = 0.5 * (1.0 + d_lower);
  const double p_upper = 0.5 * (1.0 + d_upper);
  const double h_lower = -std::log2(p_lower);
  const double h_upper = -std::log2(p_upper);
  const double dh = (h_upper - h_lower) / span;
  const double log_gap = std::log(p_upper) - std::log(p_lower);
  const double p_mean = std::abs(log_gap) < 1e-300 ? p_upper : (p_upper - p_lower) / log_gap;
  const double rhs = -kLeakageRescale * p_mean * dh;
  return std::abs(lhs - rhs);
}

struct SamplePairs {
  Eigen::MatrixXd coeffs;  // basis_count x samples, difference-operator coefficients
  std::vector<PureState> first, second;
};

SamplePairs draw_pairs(int n_s, int samples, std::uint64_t seed,
                       const std::vector<Operator>& basis) {
  if (samples < 1) throw std::invalid_argument("flow: sample count must be positive");
  const Eigen::Index dim = Eigen::Index{1} << n_s;
  SamplePairs out;
  out.coeffs.resize(static_cast<Eigen::Index>(basis.size()), samples);
  out.first.reserve(static_cast<std::size_t>(samples));
  out.second.reserve(static_cast<std::size_t>(samples));
  for (int i = 0; i < samples; ++i) {
    SplitMix64 rng = derive_stream(seed, static_cast<std::uint64_t>(i));
    auto [a, b] = n_s == 1 ? haar_orthogonal_qubit_pair(rng)
                           : haar_orthogonal_pair_multiqubit(n_s, rng);
    const Operator delta = a.amps * a.amps.adjoint() - b.amps * b.amps.adjoint();
    for (std::size_t k = 0; k < basis.size(); ++k) {
      Complex acc{0.0, 0.0};
      const Operator& bk = basis[k];
      for (Eigen::Index r = 0; r < dim; ++r)
        for (Eigen::Index c = 0; c < dim; ++c) {
          const Complex v = bk(r, c);
          if (v != Complex{0.0, 0.0}) acc += v * delta(c, r);
        }
      out.coeffs(static_cast<Eigen::Index>(k), i) = acc.real();
    }
    out.first.push_back(std::move(a));
    out.second.push_back(std::move(b));
  }
  return out;
}

std::vector<int> leading_qubits(int n_s) {
  std::vector<int> keep(n_s);
  for (int q = 0; q < n_s; ++q) keep[q] = q;
  return keep;
}

}  // namespace

double trace_distance(const DensityMatrix& a, const DensityMatrix& b) {
  if (a.mat.rows() != b.mat.rows()) {
    throw std::invalid_argument("trace_distance: dimension mismatch");
  }
  return 0.5 * trace_norm_hermitian(a.mat - b.mat);
}

double guessing_probability(const DensityMatrix& a, const DensityMatrix& b) {
  return 0.5 * (1.0 + trace_distance(a, b));
}

double conditional_min_entropy(const DensityMatrix& a, const DensityMatrix& b) {
  return -std::log2(guessing_probability(a, b));
}

FlowSeries compute_flow_series(const Engine& engine, int n_s, const std::vector<double>& grid,
                               const FlowOptions& options) {
  if (grid.empty()) throw std::invalid_argument("flow: empty grid");
  const double total = engine.run_time();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (grid[i] < -1e-12 || grid[i] > total * (1.0 + 1e-12) ||
        (i > 0 && grid[i] <= grid[i - 1])) {
      throw std::invalid_argument("flow: grid must be strictly ascending within the run");
    }
  }
  const bool discrete = engine.discrete();
  const double h = options.stencil > 0.0 ? options.stencil : (discrete ? 1.0 : total / 2000.0);

  std::vector<Stencil> stencils(grid.size());
  std::vector<double> captures;
  captures.reserve(3 * grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    stencils[i] = make_stencil(grid[i], h, total, discrete);
    captures.push_back(stencils[i].lower);
    captures.push_back(grid[i]);
    captures.push_back(stencils[i].upper);
  }
  std::sort(captures.begin(), captures.end());
  captures.erase(std::unique(captures.begin(), captures.end()), captures.end());
  const auto capture_index = [&captures](double t) {
    return static_cast<std::size_t>(
        std::lower_bound(captures.begin(), captures.end(), t) - captures.begin());
  };

  const ChannelSweep sweep(engine, captures, leading_qubits(n_s));
  const std::vector<Operator> basis = pauli_basis(n_s);
  const SamplePairs pairs = draw_pairs(n_s, options.samples, options.seed, basis);

  FlowSeries series;
  series.grid = grid;
  series.n_s = n_s;
  series.seed = options.seed;
  series.records.resize(grid.size());

  parallel_for(grid.size(), options.exec, [&](std::size_t gi) {
    const Stencil st = stencils[gi];
    const std::size_t li = capture_index(st.lower);
    const std::size_t ui = capture_index(st.upper);
    const std::size_t ci = capture_index(grid[gi]);
    const FlatImages lower_images(sweep.snapshot(li));
    const FlatImages upper_images(sweep.snapshot(ui));
    const double span = st.upper - st.lower;
    FlatImages::Scratch scratch;

    int best = 0;
    double best_derivative = 0.0;
    for (int s = 0; s < options.samples; ++s) {
      const auto coeffs = pairs.coeffs.col(s);
      const double derivative =
          (upper_images.distance(coeffs, scratch) - lower_images.distance(coeffs, scratch)) /
          span;
      if (s == 0 || derivative > best_derivative) {
        best = s;
        best_derivative = derivative;
      }
    }

    const auto best_coeffs = pairs.coeffs.col(best);
    const double d_lower = lower_images.distance(best_coeffs, scratch);
    const double d_upper = upper_images.distance(best_coeffs, scratch);
    double d_center;
    if (ci == li) {
      d_center = d_lower;
    } else if (ci == ui) {
      d_center = d_upper;
    } else {
      d_center = FlatImages(sweep.snapshot(ci)).distance(best_coeffs, scratch);
    }

    FlowRecord& rec = series.records[gi];
    rec.t = grid[gi];
    rec.sigma = best_derivative;
    rec.p_guess_star = 0.5 * (1.0 + d_center);
    rec.proposition_residual = identity_residual(d_lower, d_upper, span);
    rec.argmax_index = best;
    rec.argmax_state0 = pairs.first[static_cast<std::size_t>(best)];
    rec.argmax_state1 = pairs.second[static_cast<std::size_t>(best)];
    rec.sample_count = options.samples;
  });

  // running integrals (trapezoid) of the flow and of the rescaled flow
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const FlowRecord& prev = series.records[i - 1];
    FlowRecord& cur = series.records[i];
    const double width = grid[i] - grid[i - 1];
    cur.sigma_tilde = prev.sigma_tilde + 0.5 * width * (prev.sigma + cur.sigma);
    const double prev_rate = prev.sigma / (kLeakageRescale * prev.p_guess_star);
    const double cur_rate = cur.sigma / (kLeakageRescale * cur.p_guess_star);
    cur.leakage = prev.leakage - 0.5 * width * (prev_rate + cur_rate);
  }
  return series;
}

FlowRecord information_flow(const Engine& engine, int n_s, double t, int samples,
                            std::uint64_t seed) {
  FlowOptions options;
  options.samples = samples;
  options.seed = seed;
  const FlowSeries series = compute_flow_series(engine, n_s, {t}, options);
  return series.records[0];
}

double proposition_check(const Engine& engine, int n_s, const FlowRecord& record) {
  const bool discrete = engine.discrete();
  const double total = engine.run_time();
  const double h = discrete ? 1.0 : total / 2000.0;
  const Stencil st = make_stencil(record.t, h, total, discrete);
  const ChannelSweep sweep(engine, {st.lower, st.upper}, leading_qubits(n_s));

  const Operator delta = record.argmax_state0.amps * record.argmax_state0.amps.adjoint() -
                         record.argmax_state1.amps * record.argmax_state1.amps.adjoint();
  const Eigen::VectorXd coeffs = pauli_coefficients(delta, n_s);
  FlatImages::Scratch scratch;
  const double d_lower = FlatImages(sweep.snapshot(0)).distance(coeffs, scratch);
  const double d_upper =
      st.upper == st.lower ? d_lower : FlatImages(sweep.snapshot(1)).distance(coeffs, scratch);
  return identity_residual(d_lower, d_upper, st.upper - st.lower);
}

LeakageResult leakage(const Engine& engine, int n_s, double t1, double t2, int grid_points,
                      const FlowOptions& options) {
  const double total = engine.run_time();
  if (t1 < 0.0 || t2 > total * (1.0 + 1e-12) || t1 > t2) {
    throw std::invalid_argument("leakage: interval must satisfy 0 <= t1 <= t2 <= run time");
  }
  if (t1 == t2) {
    LeakageResult out;
    out.total_bits = 0.0;
    out.series = compute_flow_series(engine, n_s, {t1}, options);
    return out;
  }
  std::vector<double> grid;
  if (engine.discrete()) {
    const long k1 = std::lround(std::ceil(t1 - 1e-9));
    const long k2 = std::lround(std::floor(t2 + 1e-9));
    for (long k = k1; k <= k2; ++k) grid.push_back(static_cast<double>(k));
  } else {
    if (grid_points < 2) throw std::invalid_argument("leakage: empty grid");
    grid.resize(static_cast<std::size_t>(grid_points));
    for (int i = 0; i < grid_points; ++i) {
      const double frac = static_cast<double>(i) / static_cast<double>(grid_points - 1);
      grid[static_cast<std::size_t>(i)] = t1 + (t2 - t1) * frac;
    }
    grid.front() = t1;
    grid.back() = t2;  // keep the endpoints exact
  }
  if (grid.empty()) throw std::invalid_argument("leakage: empty grid");
  LeakageResult out;
  out.series = compute_flow_series(engine, n_s, grid, options);
  out.total_bits = out.series.records.back().leakage;
  return out;
}

std::vector<double> engine_grid(const Engine& engine, int grid_points) {
  std::vector<double> grid;
  if (engine.discrete()) {
    const long k_max = std::lround(engine.run_time());
    for (long k = 0; k <= k_max; ++k) grid.push_back(static_cast<double>(k));
  } else {
    if (grid_points < 2) throw std::invalid_argument("engine_grid: need at least two points");
    const double total = engine.run_time();
    grid.resize(static_cast<std::size_t>(grid_points));
    for (int i = 0; i < grid_points; ++i) {
      const double frac = static_cast<double>(i) / static_cast<double>(grid_points - 1);
      grid[static_cast<std::size_t>(i)] = total * frac;
    }
    grid.back() = total;  // keep the endpoint exact
  }
  return grid;
}

}  // namespace infoflux
