#include "infoflux/reference.hpp"

#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace infoflux::reference {

namespace {

Operator environment_density(int n, const std::vector<int>& keep) {
  const int n_e = n - static_cast<int>(keep.size());
  const PureState env = uniform_superposition(n_e);
  return env.amps * env.amps.adjoint();
}

// Embed a subsystem operator at the kept qubit positions against an
// environment operator on the rest.
Operator embed(const Operator& sys_op, const Operator& env_op, int n,
               const std::vector<int>& keep) {
  const int n_s = static_cast<int>(keep.size());
  const int n_e = n - n_s;
  std::vector<int> env_qubits;
  {
    std::vector<bool> kept(n, false);
    for (int q : keep) kept[q] = true;
    for (int q = 0; q < n; ++q)
      if (!kept[q]) env_qubits.push_back(q);
  }
  const Eigen::Index dim = Eigen::Index{1} << n;
  const auto split = [&](Eigen::Index g) {
    Eigen::Index s = 0, e = 0;
    for (int bit = 0; bit < n_s; ++bit)
      if ((g >> (n - 1 - keep[bit])) & 1) s |= Eigen::Index{1} << (n_s - 1 - bit);
    for (int bit = 0; bit < n_e; ++bit)
      if ((g >> (n - 1 - env_qubits[bit])) & 1) e |= Eigen::Index{1} << (n_e - 1 - bit);
    return std::pair{s, e};
  };
  Operator out(dim, dim);
  for (Eigen::Index g = 0; g < dim; ++g) {
    const auto [gs, ge] = split(g);
    for (Eigen::Index h = 0; h < dim; ++h) {
      const auto [hs, he] = split(h);
      out(g, h) = sys_op(gs, hs) * env_op(ge, he);
    }
  }
  return out;
}

}  // namespace

std::vector<Operator> global_unitary(const Engine& engine, const std::vector<double>& times) {
  const Eigen::Index dim = Eigen::Index{1} << engine.qubit_count();
  std::vector<Operator> out;
  out.reserve(times.size());

  if (const auto* circuit = dynamic_cast<const CircuitEngine*>(&engine)) {
    Operator u = Operator::Identity(dim, dim);
    long iter = 0;
    for (double t : times) {
      const long target = std::lround(t);
      for (; iter < target; ++iter) u = circuit->iteration_unitary() * u;
      out.push_back(u);
    }
    return out;
  }
  if (const auto* analog = dynamic_cast<const AnalogEngine*>(&engine)) {
    for (double t : times) out.push_back(matexp_unitary(analog->hamiltonian(), t));
    return out;
  }
  const auto* adiabatic = dynamic_cast<const AdiabaticEngine*>(&engine);
  if (adiabatic == nullptr) throw std::invalid_argument("global_unitary: unknown engine type");

  const double dt = adiabatic->step_size();
  Operator u = Operator::Identity(dim, dim);
  double t = 0.0;
  for (double capture : times) {
    const double span = capture - t;
    if (span > 1e-13) {
      const long substeps = std::lround(std::ceil(span / dt - 1e-12));
      const double h = span / static_cast<double>(substeps);
      for (long i = 0; i < substeps; ++i) {
        const double mid = t + h * (static_cast<double>(i) + 0.5);
        u = matexp_unitary(adiabatic->hamiltonian_at(mid), h) * u;
      }
      t = capture;
    }
    out.push_back(u);
  }
  return out;
}

Operator channel_image_direct(const Engine& engine, double t, const Operator& b,
                              const std::vector<int>& keep) {
  const int n = engine.qubit_count();
  const Operator u = global_unitary(engine, {t})[0];
  const Operator joint = embed(b, environment_density(n, keep), n, keep);
  return partial_trace(u * joint * u.adjoint(), n, keep);
}

DensityMatrix channel_apply_direct(const Engine& engine, double t, const DensityMatrix& rho,
                                   const std::vector<int>& keep) {
  const int n = engine.qubit_count();
  const int n_s = static_cast<int>(keep.size());
  const int n_e = n - n_s;
  const HermEig eig = herm_eig(rho.mat);
  const PureState env = uniform_superposition(n_e);

  std::vector<int> env_qubits;
  {
    std::vector<bool> kept(n, false);
    for (int q : keep) kept[q] = true;
    for (int q = 0; q < n; ++q)
      if (!kept[q]) env_qubits.push_back(q);
  }
  const Eigen::Index dim = Eigen::Index{1} << n;
  const Eigen::Index d_sys = Eigen::Index{1} << n_s;
  const Eigen::Index d_env = Eigen::Index{1} << n_e;

  Operator columns = Operator::Zero(dim, d_sys);
  for (Eigen::Index col = 0; col < d_sys; ++col) {
    for (Eigen::Index s = 0; s < d_sys; ++s) {
      const Complex amp = eig.eigenvectors(s, col);
      if (amp == Complex{0.0, 0.0}) continue;
      Eigen::Index sbase = 0;
      for (int bit = 0; bit < n_s; ++bit)
        if ((s >> (n_s - 1 - bit)) & 1) sbase |= Eigen::Index{1} << (n - 1 - keep[bit]);
      for (Eigen::Index e = 0; e < d_env; ++e) {
        Eigen::Index g = sbase;
        for (int bit = 0; bit < n_e; ++bit)
          if ((e >> (n_e - 1 - bit)) & 1) g |= Eigen::Index{1} << (n - 1 - env_qubits[bit]);
        columns(g, col) += amp * env.amps(e);
      }
    }
  }
  const Operator evolved = engine.propagate(columns, {t})[0];
  Operator global = Operator::Zero(dim, dim);
  for (Eigen::Index col = 0; col < d_sys; ++col) {
    global += eig.eigenvalues(col) * (evolved.col(col) * evolved.col(col).adjoint());
  }
  return {n_s, partial_trace(global, n, keep)};
}

double grover_success_closed_form(int n, int k) {
  const double theta = std::asin(std::pow(2.0, -0.5 * n));
  const double amp = std::sin((2.0 * k + 1.0) * theta);
  return amp * amp;
}

double analog_success_closed_form(int n, double energy, double t) {
  const double x = std::pow(2.0, -0.5 * n);
  const double c = std::cos(energy * x * t), s = std::sin(energy * x * t);
  return s * s + x * x * c * c;
}

double analog_success_two_level(int n, double energy, double t) {
  const double x = std::pow(2.0, -0.5 * n);
  const double s = std::sqrt(1.0 - x * x);
  Operator h2(2, 2);
  h2 << energy * (1.0 + x * x), energy * x * s, energy * x * s, energy * s * s;
  const Operator u2 = matexp_unitary(h2, t);
  const Eigen::Vector2cd start{Complex(x, 0.0), Complex(s, 0.0)};
  return std::norm((u2 * start)(0));
}

double multipartite_concurrence_direct(const PureState& psi) {
  const int n = psi.qubit_count;
  const DensityMatrix rho = density_of(psi);
  const std::uint32_t full = (1u << n) - 1u;
  double purity_sum = 0.0;
  for (std::uint32_t mask = 1; mask < full; ++mask) {
    std::vector<int> keep;
    for (int q = 0; q < n; ++q)
      if (mask & (1u << q)) keep.push_back(q);
    const Operator marginal = partial_trace(rho.mat, n, keep);
    purity_sum += (marginal * marginal).trace().real();
  }
  const double subset_count = std::pow(2.0, n) - 2.0;
  const double bracket = subset_count - purity_sum;
  const double noise_floor = subset_count * 16.0 * std::numeric_limits<double>::epsilon();
  if (bracket <= noise_floor) return 0.0;
  return std::pow(2.0, 1.0 - 0.5 * n) * std::sqrt(bracket);
}

}  // namespace infoflux::reference
