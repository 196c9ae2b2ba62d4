#include <cmath>
#include <functional>
#include <iostream>
#include <numbers>

#include "infoflux/entangle.hpp"
#include "infoflux/experiment.hpp"
#include "infoflux/reference.hpp"

namespace infoflux {

namespace {

struct Battery {
  std::ostream& out;
  bool all_ok = true;

  void check(const char* name, const std::function<bool()>& body) {
    bool ok = false;
    std::string note;
    try {
      ok = body();
    } catch (const std::exception& e) {
      note = std::string(" (") + e.what() + ")";
    }
    out << (ok ? "[ok]   " : "[FAIL] ") << name << note << "\n";
    all_ok = all_ok && ok;
  }
};

}  // namespace

bool run_selftest(std::ostream& out) {
  Battery battery{out};

  battery.check("kron places blocks by the high-bits-first rule", [] {
    const Operator p0 = basis_state(1, 0).amps * basis_state(1, 0).amps.adjoint();
    const Operator p1 = basis_state(1, 1).amps * basis_state(1, 1).amps.adjoint();
    const Operator k = kron(p0, p1);
    return k.rows() == 4 && std::abs(k(1, 1).real() - 1.0) < 1e-15 && std::abs(k.sum() - 1.0) < 1e-15;
  });

  battery.check("partial trace: product factor and maximally mixed marginal", [] {
    const Operator bell = [] {
      StateVector v = StateVector::Zero(4);
      v(0) = v(3) = 1.0 / std::numbers::sqrt2;
      return Operator(v * v.adjoint());
    }();
    const Operator marginal = partial_trace(bell, 2, {0});
    return (marginal - 0.5 * identity_op(2)).cwiseAbs().maxCoeff() < 1e-12;
  });

  battery.check("matexp_unitary: unitarity and the group property", [] {
    SplitMix64 rng(7);
    Operator a(8, 8);
    for (Eigen::Index i = 0; i < 8; ++i)
      for (Eigen::Index j = 0; j < 8; ++j) a(i, j) = Complex(rng.normal(), rng.normal());
    const Operator h = 0.5 * (a + a.adjoint());
    const Operator u = matexp_unitary(h, 0.7);
    const Operator v = matexp_unitary(h, 1.6);
    const Operator w = matexp_unitary(h, 2.3);
    return is_unitary(u, 1e-9) && (u * v - w).cwiseAbs().maxCoeff() < 1e-9;
  });

  battery.check("trace norm: orthogonal and oblique projector differences", [] {
    Operator z(2, 2);
    z << 1, 0, 0, -1;
    Operator oblique(2, 2);
    oblique << 0.5, -0.5, -0.5, -0.5;
    return std::abs(trace_norm_hermitian(z) - 2.0) < 1e-12 &&
           std::abs(trace_norm_hermitian(oblique) - std::numbers::sqrt2) < 1e-12;
  });

  battery.check("uniform superposition: target overlap is 1/2^n", [] {
    const PureState psi = uniform_superposition(8);
    return std::abs(success_probability(psi, 0) - 1.0 / 256.0) < 1e-15;
  });

  battery.check("sampled pairs: orthogonal and seed-reproducible", [] {
    SplitMix64 a(42), b(42);
    const auto [p, q] = haar_orthogonal_qubit_pair(a);
    const auto [r, s] = haar_orthogonal_qubit_pair(b);
    return std::abs(p.amps.dot(q.amps)) < 1e-12 && p.amps == r.amps && q.amps == s.amps;
  });

  battery.check("circuit engine matches the rotation closed form", [] {
    for (int n = 2; n <= 6; ++n) {
      const Trajectory traj = circuit_trajectory(n, 0, 10);
      for (int k = 0; k <= 10; ++k) {
        const double p = success_probability(traj.states[static_cast<std::size_t>(k)], 0);
        if (std::abs(p - reference::grover_success_closed_form(n, k)) > 1e-10) return false;
      }
    }
    return true;
  });

  battery.check("analog engine matches its invariant-plane solution", [] {
    EngineParams params;
    params.kind = EngineKind::Analog;
    params.n = 6;
    AnalogEngine engine(params);
    for (double t : {1.0, 5.0, 12.0}) {
      const double full = success_probability(engine.state_at(t), 0);
      if (std::abs(full - reference::analog_success_two_level(6, 1.0, t)) > 1e-10) return false;
    }
    return true;
  });

  battery.check("adiabatic schedule endpoints and gap formula", [] {
    const double total = adiabatic_runtime(6, 0.2);
    return std::abs(adiabatic_schedule_f(6, 0.2, 0.0) - 1.0) < 1e-12 &&
           std::abs(adiabatic_schedule_f(6, 0.2, total)) < 1e-12 &&
           std::abs(adiabatic_gap(6, 0.5) - std::pow(2.0, -3.0)) < 1e-12;
  });

  battery.check("channel is the identity map at t = 0", [] {
    EngineParams params;
    params.kind = EngineKind::Circuit;
    params.n = 4;
    CircuitEngine engine(params);
    const ChannelSnapshot snap = channel_at(engine, 0.0, 1);
    const std::vector<Operator> basis = pauli_basis(1);
    for (std::size_t k = 0; k < basis.size(); ++k) {
      if ((snap.basis_images[k] - basis[k]).cwiseAbs().maxCoeff() > 1e-12) return false;
    }
    return true;
  });

  battery.check("snapshot application agrees with the direct evolution path", [] {
    EngineParams params;
    params.kind = EngineKind::Circuit;
    params.n = 4;
    CircuitEngine engine(params);
    SplitMix64 rng(3);
    const ChannelSnapshot snap = channel_at(engine, 2.0, 1);
    for (int trial = 0; trial < 20; ++trial) {
      const auto [a, b] = haar_orthogonal_qubit_pair(rng);
      const DensityMatrix rho = density_of(a);
      const DensityMatrix via_snapshot = apply(snap, rho);
      const DensityMatrix direct = reference::channel_apply_direct(engine, 2.0, rho, {0});
      if ((via_snapshot.mat - direct.mat).cwiseAbs().maxCoeff() > 1e-10) return false;
      (void)b;
    }
    return true;
  });

  battery.check("evolved distances never exceed the initial one", [] {
    EngineParams params;
    params.kind = EngineKind::Analog;
    params.n = 5;
    AnalogEngine engine(params);
    SplitMix64 rng(11);
    const ChannelSnapshot snap = channel_at(engine, 0.4 * engine.run_time(), 1);
    for (int trial = 0; trial < 50; ++trial) {
      const auto [a, b] = haar_orthogonal_qubit_pair(rng);
      const double d = trace_distance(apply(snap, density_of(a)), apply(snap, density_of(b)));
      if (d > 1.0 + 1e-9) return false;
    }
    return true;
  });

  battery.check("flow / min-entropy-rate identity residual", [] {
    EngineParams params;
    params.kind = EngineKind::Analog;
    params.n = 4;
    AnalogEngine engine(params);
    const FlowRecord record = information_flow(engine, 1, 0.5 * engine.run_time(), 200, 5);
    const double residual = proposition_check(engine, 1, record);
    return residual < std::max(1e-6, 1e-3 * std::abs(record.sigma));
  });

  battery.check("entanglement: analytic two-qubit and eight-qubit values", [] {
    StateVector bell = StateVector::Zero(4);
    bell(0) = bell(3) = 1.0 / std::numbers::sqrt2;
    StateVector ghz = StateVector::Zero(256);
    ghz(0) = ghz(255) = 1.0 / std::numbers::sqrt2;
    return std::abs(bipartite_concurrence({2, bell}) - 1.0) < 1e-10 &&
           std::abs(multipartite_concurrence({8, ghz}) - std::sqrt(127.0) / 8.0) < 1e-9;
  });

  battery.check("serial and parallel flow kernels agree bit for bit", [] {
    EngineParams params;
    params.kind = EngineKind::Circuit;
    params.n = 4;
    CircuitEngine engine(params);
    const std::vector<double> grid{0.0, 1.0, 2.0, 3.0};
    FlowOptions serial, parallel;
    serial.samples = parallel.samples = 100;
    serial.seed = parallel.seed = 9;
    serial.exec = Exec::Serial;
    parallel.exec = Exec::Parallel;
    const FlowSeries a = compute_flow_series(engine, 1, grid, serial);
    const FlowSeries b = compute_flow_series(engine, 1, grid, parallel);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      if (a.records[i].sigma != b.records[i].sigma ||
          a.records[i].leakage != b.records[i].leakage) {
        return false;
      }
    }
    return true;
  });

  out << (battery.all_ok ? "selftest: all checks passed\n" : "selftest: FAILURES present\n");
  return battery.all_ok;
}

}  // namespace infoflux
