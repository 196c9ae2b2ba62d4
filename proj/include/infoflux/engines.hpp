#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "infoflux/qstate.hpp"

// The three amplitude-amplification dynamics behind one interface. Every
// engine starts from the uniform superposition and exposes the action of its
// global unitary on arbitrary state-vector bundles at requested times, which
// is all the reduced-dynamics and diagnostics layers need.

namespace infoflux {

enum class EngineKind { Circuit, Analog, Adiabatic };

struct EngineParams {
  EngineKind kind = EngineKind::Circuit;
  int n = 2;                  // qubits
  std::uint64_t target = 0;   // marked basis index
  double energy = 1.0;        // analog Hamiltonian scale
  double epsilon = 0.2;       // adiabatic error parameter
  double dt = 0.0;            // adiabatic step; <= 0 selects run_time/2000 with auto-halving
  int iterations = -1;        // circuit run length; -1 selects the optimal count
  bool ideal_adiabatic = false;  // follow instantaneous eigenstates exactly (cross-check mode)
};

struct Trajectory {
  std::vector<double> time_grid;
  std::vector<PureState> states;
  EngineParams engine;
};

class Engine {
 public:
  virtual ~Engine() = default;

  const EngineParams& params() const { return params_; }
  int qubit_count() const { return params_.n; }
  virtual double run_time() const = 0;
  virtual bool discrete() const = 0;

  // Evolve a bundle of global column vectors from t = 0, capturing a copy at
  // each requested time. Times must be ascending and lie in [0, run_time];
  // the circuit engine additionally requires them to be whole iterations.
  virtual std::vector<Operator> propagate(const Operator& columns,
                                          const std::vector<double>& times) const = 0;

  PureState state_at(double t) const;
  Trajectory trajectory(const std::vector<double>& grid) const;

 protected:
  explicit Engine(EngineParams params) : params_(params) {}
  EngineParams params_;
};

std::unique_ptr<Engine> make_engine(const EngineParams& params);

// (2|psi_n><psi_n| - I) * G_w with G_w flipping the sign of basis column w.
Operator grover_unitary(int n, std::uint64_t w);

// Iteration count k maximizing sin^2((2k+1) asin(2^{-n/2})).
int grover_optimal_iterations(int n);

// Interpolation schedule f with f(0) = 1, f(T) = 0 and total time T below.
double adiabatic_schedule_f(int n, double epsilon, double t);
double adiabatic_runtime(int n, double epsilon);  // N atan(sqrt(N-1)) / (eps sqrt(N-1))
double adiabatic_runtime_reference_form(int n, double epsilon);  // sqrt(N) pi / (2 eps)

// Spectral gap of the interpolated Hamiltonian at schedule value f.
double adiabatic_gap(int n, double f);

double success_probability(const PureState& state, std::uint64_t w);

// Convenience constructors for the standard runs.
Trajectory circuit_trajectory(int n, std::uint64_t w, int k_max);
Trajectory analog_trajectory(int n, std::uint64_t w, double energy,
                             const std::vector<double>& t_grid);
Trajectory adiabatic_trajectory(int n, std::uint64_t w, double epsilon, double dt,
                                int grid_points = 201);

class AdiabaticEngine;  // defined below; exposed for ground-state queries

class CircuitEngine final : public Engine {
 public:
  explicit CircuitEngine(EngineParams params);
  double run_time() const override { return static_cast<double>(k_max_); }
  bool discrete() const override { return true; }
  std::vector<Operator> propagate(const Operator& columns,
                                  const std::vector<double>& times) const override;
  const Operator& iteration_unitary() const { return unitary_; }
  int iteration_count() const { return k_max_; }

 private:
  Operator unitary_;
  int k_max_;
};

class AnalogEngine final : public Engine {
 public:
  explicit AnalogEngine(EngineParams params);
  double run_time() const override { return run_time_; }
  bool discrete() const override { return false; }
  std::vector<Operator> propagate(const Operator& columns,
                                  const std::vector<double>& times) const override;
  const Operator& hamiltonian() const { return hamiltonian_; }

 private:
  Operator hamiltonian_;
  HermEig eig_;
  double run_time_;
};

class AdiabaticEngine final : public Engine {
 public:
  explicit AdiabaticEngine(EngineParams params);
  double run_time() const override { return run_time_; }
  bool discrete() const override { return false; }
  std::vector<Operator> propagate(const Operator& columns,
                                  const std::vector<double>& times) const override;

  double step_size() const { return dt_; }
  PureState instantaneous_ground_state(double t) const;
  double instantaneous_gap(double t) const;
  Operator hamiltonian_at(double t) const;  // dense, for reference checks

 private:
  Eigen::Matrix2cd block_generator(double f) const;  // f P_psi + (1-f) P_w in {|w>, |r>}
  void step(Operator& columns, double t0, double h, double* alpha) const;
  void ideal_transport(const Operator& columns, const std::vector<double>& times,
                       std::vector<Operator>& out) const;

  double run_time_ = 0.0;
  double dt_ = 0.0;
  double overlap_x_ = 0.0;  // <w|psi_n> = 2^{-n/2}
  Operator span_basis_;     // N x 2 isometry, columns |w> and |r>
};

}  // namespace infoflux
