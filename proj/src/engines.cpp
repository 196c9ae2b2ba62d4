#include "infoflux/engines.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "infoflux/tolerances.hpp"

namespace infoflux {

namespace {

void validate_params(const EngineParams& p) {
  if (p.n < 1 || p.n > max_register_qubits()) {
    throw std::invalid_argument("engine: n must be in [1, " +
                                std::to_string(max_register_qubits()) + "]");
  }
  if (p.target >= (std::uint64_t{1} << p.n)) {
    throw std::invalid_argument("engine: target index out of range");
  }
  if (p.energy <= 0.0) throw std::invalid_argument("engine: energy must be positive");
  if (p.epsilon <= 0.0 || p.epsilon >= 1.0) {
    throw std::invalid_argument("engine: epsilon must lie in (0, 1)");
  }
}

void check_ascending(const std::vector<double>& times) {
  double prev = 0.0;
  for (double t : times) {
    if (t < prev - 1e-12 || t < -1e-12) {
      throw std::invalid_argument("propagate: times must be ascending and nonnegative");
    }
    prev = t;
  }
}

// exp(i tau A) for Hermitian 2x2 A, analytic.
Eigen::Matrix2cd exp_i_herm2(const Eigen::Matrix2cd& a, double tau) {
  const double mu = 0.5 * (a(0, 0).real() + a(1, 1).real());
  Eigen::Matrix2cd b = a;
  b(0, 0) -= mu;
  b(1, 1) -= mu;
  const double r = std::sqrt(b(0, 0).real() * b(0, 0).real() + std::norm(b(0, 1)));
  const Complex outer = std::exp(Complex(0.0, tau * mu));
  const double sinc = (r > 0.0) ? std::sin(tau * r) / r : tau;
  Eigen::Matrix2cd out = std::cos(tau * r) * Eigen::Matrix2cd::Identity() + Complex(0.0, sinc) * b;
  return outer * out;
}

}  // namespace

// ---------------------------------------------------------------------------
// free functions
// ---------------------------------------------------------------------------

Operator grover_unitary(int n, std::uint64_t w) {
  if (n < 1 || n > max_register_qubits()) throw std::invalid_argument("grover_unitary: n out of range");
  const Eigen::Index dim = Eigen::Index{1} << n;
  if (w >= static_cast<std::uint64_t>(dim)) throw std::invalid_argument("grover_unitary: target out of range");
  const double two_over_dim = 2.0 / static_cast<double>(dim);
  Operator u(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    for (Eigen::Index j = 0; j < dim; ++j) {
      double v = two_over_dim - (i == j ? 1.0 : 0.0);
      if (static_cast<std::uint64_t>(j) == w) v = -v;
      u(i, j) = v;
    }
  }
  return u;
}

int grover_optimal_iterations(int n) {
  const double theta = std::asin(std::pow(2.0, -0.5 * n));
  return static_cast<int>(std::lround(std::numbers::pi / (4.0 * theta) - 0.5));
}

double adiabatic_runtime(int n, double epsilon) {
  const double big_n = std::pow(2.0, n);
  const double root = std::sqrt(big_n - 1.0);
  return big_n * std::atan(root) / (epsilon * root);
}

double adiabatic_runtime_reference_form(int n, double epsilon) {
  return std::sqrt(std::pow(2.0, n)) * std::numbers::pi / (2.0 * epsilon);
}

double adiabatic_schedule_f(int n, double epsilon, double t) {
  const double total = adiabatic_runtime(n, epsilon);
  if (t < -1e-9 || t > total * (1.0 + 1e-9)) {
    throw std::invalid_argument("adiabatic_schedule_f: t outside [0, T]");
  }
  const double big_n = std::pow(2.0, n);
  const double root = std::sqrt(big_n - 1.0);
  const double s =
      0.5 + std::tan(2.0 * epsilon * t * root / big_n - std::atan(root)) / (2.0 * root);
  return 1.0 - s;
}

double adiabatic_gap(int n, double f) {
  const double big_n = std::pow(2.0, n);
  return std::sqrt(1.0 - 4.0 * f * (1.0 - f) * (1.0 - 1.0 / big_n));
}

double success_probability(const PureState& state, std::uint64_t w) {
  if (w >= static_cast<std::uint64_t>(state.dim())) {
    throw std::invalid_argument("success_probability: target out of range");
  }
  return std::norm(state.amps(static_cast<Eigen::Index>(w)));
}

PureState Engine::state_at(double t) const {
  const PureState start = uniform_superposition(params_.n);
  const std::vector<Operator> out = propagate(start.amps, {t});
  return {params_.n, out[0].col(0)};
}

Trajectory Engine::trajectory(const std::vector<double>& grid) const {
  const PureState start = uniform_superposition(params_.n);
  const std::vector<Operator> snaps = propagate(start.amps, grid);
  Trajectory traj{grid, {}, params_};
  traj.states.reserve(snaps.size());
  for (const Operator& s : snaps) traj.states.push_back(PureState{params_.n, s.col(0)});
  return traj;
}

// ---------------------------------------------------------------------------
// circuit engine
// ---------------------------------------------------------------------------

CircuitEngine::CircuitEngine(EngineParams params) : Engine(params) {
  validate_params(params_);
  k_max_ = params_.iterations >= 1 ? params_.iterations : grover_optimal_iterations(params_.n);
  params_.iterations = k_max_;
  unitary_ = grover_unitary(params_.n, params_.target);
}

std::vector<Operator> CircuitEngine::propagate(const Operator& columns,
                                               const std::vector<double>& times) const {
  check_ascending(times);
  std::vector<Operator> out;
  out.reserve(times.size());
  Operator current = columns;
  long iter = 0;
  for (double t : times) {
    const long target = std::lround(t);
    if (std::abs(t - static_cast<double>(target)) > 1e-9) {
      throw std::invalid_argument("circuit propagate: times must be whole iterations");
    }
    for (; iter < target; ++iter) current = unitary_ * current;
    out.push_back(current);
  }
  return out;
}

// ---------------------------------------------------------------------------
// analog engine
// ---------------------------------------------------------------------------

AnalogEngine::AnalogEngine(EngineParams params) : Engine(params) {
  validate_params(params_);
  const Eigen::Index dim = Eigen::Index{1} << params_.n;
  const PureState psi = uniform_superposition(params_.n);
  hamiltonian_ = params_.energy * (psi.amps * psi.amps.adjoint());
  const Eigen::Index w = static_cast<Eigen::Index>(params_.target);
  hamiltonian_(w, w) += params_.energy;
  eig_ = herm_eig(hamiltonian_);
  run_time_ = std::numbers::pi * std::sqrt(static_cast<double>(dim)) / (2.0 * params_.energy);
}

std::vector<Operator> AnalogEngine::propagate(const Operator& columns,
                                              const std::vector<double>& times) const {
  check_ascending(times);
  std::vector<Operator> out;
  out.reserve(times.size());
  const Operator projected = eig_.eigenvectors.adjoint() * columns;
  for (double t : times) {
    Eigen::VectorXcd phases(eig_.eigenvalues.size());
    for (Eigen::Index i = 0; i < phases.size(); ++i) {
      phases(i) = std::exp(Complex(0.0, -t * eig_.eigenvalues(i)));
    }
    out.push_back(eig_.eigenvectors * (phases.asDiagonal() * projected));
  }
  return out;
}

// ---------------------------------------------------------------------------
// adiabatic engine
// ---------------------------------------------------------------------------

AdiabaticEngine::AdiabaticEngine(EngineParams params) : Engine(params) {
  validate_params(params_);
  const Eigen::Index dim = Eigen::Index{1} << params_.n;
  run_time_ = adiabatic_runtime(params_.n, params_.epsilon);
  overlap_x_ = std::pow(2.0, -0.5 * params_.n);

  // orthonormal basis {|w>, |r>} of the invariant plane spanned by the target
  // and the uniform superposition
  const PureState psi = uniform_superposition(params_.n);
  StateVector r = psi.amps;
  r(static_cast<Eigen::Index>(params_.target)) -= overlap_x_;
  r /= r.norm();
  span_basis_ = Operator(dim, 2);
  span_basis_.col(0) = StateVector::Zero(dim);
  span_basis_(static_cast<Eigen::Index>(params_.target), 0) = 1.0;
  span_basis_.col(1) = r;

  // pick the integration step: the contract is that halving it moves the
  // final state by less than the convergence tolerance
  auto final_state = [&](double dt) {
    Operator cols = psi.amps;
    const long steps = std::lround(std::ceil(run_time_ / dt - 1e-12));
    const double h = run_time_ / static_cast<double>(steps);
    for (long i = 0; i < steps; ++i) step(cols, h * static_cast<double>(i), h, nullptr);
    return cols;
  };
  const bool explicit_dt = params_.dt > 0.0;
  double dt = explicit_dt ? params_.dt : run_time_ / 2000.0;
  Operator coarse = final_state(dt);
  for (int halvings = 0;; ++halvings) {
    const Operator fine = final_state(dt / 2.0);
    const double drift = (coarse - fine).norm();
    if (drift < tol::integrator_convergence) break;
    if (explicit_dt || halvings >= 8) {
      throw std::runtime_error(
          "adiabatic engine: integration step " + std::to_string(dt) +
          " too coarse (halving moved the final state by " + std::to_string(drift) +
          "); choose a smaller dt");
    }
    dt /= 2.0;
    coarse = std::move(fine);
  }
  dt_ = dt;
  params_.dt = dt;
}

Eigen::Matrix2cd AdiabaticEngine::block_generator(double f) const {
  const double x = overlap_x_;
  const double s = std::sqrt(1.0 - x * x);
  Eigen::Matrix2cd a;
  a << f * x * x + (1.0 - f), f * x * s, f * x * s, f * s * s;
  return a;
}

void AdiabaticEngine::step(Operator& columns, double t0, double h, double* alpha) const {
  const double f = adiabatic_schedule_f(params_.n, params_.epsilon, t0 + 0.5 * h);
  // exp(-i h (I - A)) = e^{-ih} exp(i h A); A acts only inside the plane
  const Eigen::Matrix2cd gain = exp_i_herm2(block_generator(f), h) - Eigen::Matrix2cd::Identity();
  columns += span_basis_ * (gain * (span_basis_.adjoint() * columns));
  columns *= std::exp(Complex(0.0, -h));
  if (alpha != nullptr) {
    // dynamical phases of the two tracked levels
    const double r = 0.5 * adiabatic_gap(params_.n, f);
    alpha[0] -= (0.5 - r) * h;
    alpha[1] -= (0.5 + r) * h;
  }
}

std::vector<Operator> AdiabaticEngine::propagate(const Operator& columns,
                                                 const std::vector<double>& times) const {
  check_ascending(times);
  if (!times.empty() && times.back() > run_time_ * (1.0 + 1e-9)) {
    throw std::invalid_argument("adiabatic propagate: time beyond the total runtime");
  }
  std::vector<Operator> out;
  out.reserve(times.size());
  if (params_.ideal_adiabatic) {
    ideal_transport(columns, times, out);
    return out;
  }
  Operator current = columns;
  double t = 0.0;
  for (double capture : times) {
    const double span = capture - t;
    if (span > 1e-13) {
      const long substeps = std::lround(std::ceil(span / dt_ - 1e-12));
      const double h = span / static_cast<double>(substeps);
      for (long i = 0; i < substeps; ++i) step(current, t + h * static_cast<double>(i), h, nullptr);
      t = capture;
    }
    out.push_back(current);
  }
  return out;
}

namespace {

// Ground eigenvector of the symmetric block [[a, b], [b, c]] with a + c = 1,
// chosen continuously in f (never degenerate: the block gap is at least
// 2^{-n/2}).
Eigen::Vector2d block_ground(double a, double b, double c) {
  const double r = std::hypot(0.5 * (a - c), b);
  const double lo = 0.5 - r;
  Eigen::Vector2d v(lo - c, b);
  return v / v.norm();
}

}  // namespace

PureState AdiabaticEngine::instantaneous_ground_state(double t) const {
  const double f = adiabatic_schedule_f(params_.n, params_.epsilon, t);
  const Eigen::Matrix2cd h2 = Eigen::Matrix2cd::Identity() - block_generator(f);
  const Eigen::Vector2d v = block_ground(h2(0, 0).real(), h2(0, 1).real(), h2(1, 1).real());
  return {params_.n, span_basis_.col(0) * v(0) + span_basis_.col(1) * v(1)};
}

double AdiabaticEngine::instantaneous_gap(double t) const {
  return adiabatic_gap(params_.n, adiabatic_schedule_f(params_.n, params_.epsilon, t));
}

Operator AdiabaticEngine::hamiltonian_at(double t) const {
  const double f = adiabatic_schedule_f(params_.n, params_.epsilon, t);
  const Eigen::Index dim = Eigen::Index{1} << params_.n;
  const PureState psi = uniform_superposition(params_.n);
  Operator h = Operator::Identity(dim, dim) - f * (psi.amps * psi.amps.adjoint());
  const Eigen::Index w = static_cast<Eigen::Index>(params_.target);
  h(w, w) -= (1.0 - f);
  return h;
}

void AdiabaticEngine::ideal_transport(const Operator& columns, const std::vector<double>& times,
                                      std::vector<Operator>& out) const {
  const auto level_vectors = [&](double t) {
    const double f = adiabatic_schedule_f(params_.n, params_.epsilon, t);
    const Eigen::Matrix2cd h2 = Eigen::Matrix2cd::Identity() - block_generator(f);
    const Eigen::Vector2d g = block_ground(h2(0, 0).real(), h2(0, 1).real(), h2(1, 1).real());
    StateVector ground = span_basis_.col(0) * g(0) + span_basis_.col(1) * g(1);
    StateVector excited = span_basis_.col(0) * (-g(1)) + span_basis_.col(1) * g(0);
    return std::pair{ground, excited};
  };
  const auto [g0, e0] = level_vectors(0.0);
  const Eigen::RowVectorXcd c_ground = g0.adjoint() * columns;
  const Eigen::RowVectorXcd c_excited = e0.adjoint() * columns;
  const Operator rest = columns - g0 * c_ground - e0 * c_excited;

  double alpha[2] = {0.0, 0.0};
  double t = 0.0;
  for (double capture : times) {
    const double span = capture - t;
    if (span > 1e-13) {
      const long substeps = std::lround(std::ceil(span / dt_ - 1e-12));
      const double h = span / static_cast<double>(substeps);
      for (long i = 0; i < substeps; ++i) {
        const double f = adiabatic_schedule_f(params_.n, params_.epsilon,
                                              t + h * (static_cast<double>(i) + 0.5));
        const double r = 0.5 * adiabatic_gap(params_.n, f);
        alpha[0] -= (0.5 - r) * h;
        alpha[1] -= (0.5 + r) * h;
      }
      t = capture;
    }
    const auto [gt, et] = level_vectors(capture);
    Operator snap = gt * (std::exp(Complex(0.0, alpha[0])) * c_ground) +
                    et * (std::exp(Complex(0.0, alpha[1])) * c_excited) +
                    std::exp(Complex(0.0, -capture)) * rest;
    out.push_back(std::move(snap));
  }
}

// ---------------------------------------------------------------------------
// factories
// ---------------------------------------------------------------------------

std::unique_ptr<Engine> make_engine(const EngineParams& params) {
  switch (params.kind) {
    case EngineKind::Circuit:
      return std::make_unique<CircuitEngine>(params);
    case EngineKind::Analog:
      return std::make_unique<AnalogEngine>(params);
    case EngineKind::Adiabatic:
      return std::make_unique<AdiabaticEngine>(params);
  }
  throw std::invalid_argument("make_engine: unknown engine kind");
}

Trajectory circuit_trajectory(int n, std::uint64_t w, int k_max) {
  EngineParams p;
  p.kind = EngineKind::Circuit;
  p.n = n;
  p.target = w;
  p.iterations = k_max;
  CircuitEngine engine(p);
  std::vector<double> grid(static_cast<std::size_t>(k_max) + 1);
  for (std::size_t k = 0; k < grid.size(); ++k) grid[k] = static_cast<double>(k);
  return engine.trajectory(grid);
}

Trajectory analog_trajectory(int n, std::uint64_t w, double energy,
                             const std::vector<double>& t_grid) {
  EngineParams p;
  p.kind = EngineKind::Analog;
  p.n = n;
  p.target = w;
  p.energy = energy;
  AnalogEngine engine(p);
  return engine.trajectory(t_grid);
}

Trajectory adiabatic_trajectory(int n, std::uint64_t w, double epsilon, double dt,
                                int grid_points) {
  EngineParams p;
  p.kind = EngineKind::Adiabatic;
  p.n = n;
  p.target = w;
  p.epsilon = epsilon;
  p.dt = dt;
  AdiabaticEngine engine(p);
  std::vector<double> grid(static_cast<std::size_t>(grid_points));
  const double total = engine.run_time();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double frac = static_cast<double>(i) / static_cast<double>(grid.size() - 1);
    grid[i] = total * frac;
  }
  grid.back() = total;
  return engine.trajectory(grid);
}

}  // namespace infoflux
