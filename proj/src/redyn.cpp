#include "infoflux/redyn.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace infoflux {

namespace {

std::vector<int> leading_qubits(int n_s) {
  std::vector<int> keep(n_s);
  for (int q = 0; q < n_s; ++q) keep[q] = q;
  return keep;
}

void validate_keep(const Engine& engine, const std::vector<int>& keep) {
  const int n = engine.qubit_count();
  if (keep.empty() || static_cast<int>(keep.size()) >= n) {
    throw std::invalid_argument("channel: subsystem must have between 1 and n-1 qubits");
  }
  std::vector<bool> seen(n, false);
  for (int q : keep) {
    if (q < 0 || q >= n) throw std::invalid_argument("channel: qubit index out of range");
    if (seen[q]) throw std::invalid_argument("channel: duplicate qubit index");
    seen[q] = true;
  }
}

// Columns of the embedding |i>_S (x) |psi_env>: subsystem basis state at the
// kept positions, uniform superposition on the rest.
Operator embedding_isometry(int n, const std::vector<int>& keep_sorted) {
  const int n_s = static_cast<int>(keep_sorted.size());
  const int n_e = n - n_s;
  const Eigen::Index d_sys = Eigen::Index{1} << n_s;
  const Eigen::Index d_env = Eigen::Index{1} << n_e;
  const double env_amp = std::pow(2.0, -0.5 * n_e);

  std::vector<int> env_qubits;
  {
    std::vector<bool> kept(n, false);
    for (int q : keep_sorted) kept[q] = true;
    for (int q = 0; q < n; ++q)
      if (!kept[q]) env_qubits.push_back(q);
  }
  Operator v = Operator::Zero(Eigen::Index{1} << n, d_sys);
  for (Eigen::Index s = 0; s < d_sys; ++s) {
    Eigen::Index base = 0;
    for (int bit = 0; bit < n_s; ++bit)
      if ((s >> (n_s - 1 - bit)) & 1) base |= Eigen::Index{1} << (n - 1 - keep_sorted[bit]);
    for (Eigen::Index e = 0; e < d_env; ++e) {
      Eigen::Index g = base;
      for (int bit = 0; bit < n_e; ++bit)
        if ((e >> (n_e - 1 - bit)) & 1) g |= Eigen::Index{1} << (n - 1 - env_qubits[bit]);
      v(g, s) = env_amp;
    }
  }
  return v;
}

// Reorder evolved isometry rows to (s * d_env + e).
Operator gather_rows(const Operator& w, int n, const std::vector<int>& keep_sorted) {
  const int n_s = static_cast<int>(keep_sorted.size());
  const int n_e = n - n_s;
  const Eigen::Index d_sys = Eigen::Index{1} << n_s;
  const Eigen::Index d_env = Eigen::Index{1} << n_e;

  std::vector<int> env_qubits;
  {
    std::vector<bool> kept(n, false);
    for (int q : keep_sorted) kept[q] = true;
    for (int q = 0; q < n; ++q)
      if (!kept[q]) env_qubits.push_back(q);
  }
  Operator out(d_sys * d_env, w.cols());
  for (Eigen::Index s = 0; s < d_sys; ++s) {
    Eigen::Index sbase = 0;
    for (int bit = 0; bit < n_s; ++bit)
      if ((s >> (n_s - 1 - bit)) & 1) sbase |= Eigen::Index{1} << (n - 1 - keep_sorted[bit]);
    for (Eigen::Index e = 0; e < d_env; ++e) {
      Eigen::Index g = sbase;
      for (int bit = 0; bit < n_e; ++bit)
        if ((e >> (n_e - 1 - bit)) & 1) g |= Eigen::Index{1} << (n - 1 - env_qubits[bit]);
      out.row(s * d_env + e) = w.row(g);
    }
  }
  return out;
}

// Images of every basis operator from a gathered isometry. Uses the overlap
// tensor K[i][j](s,s') = sum_e W(se,i) conj(W(s'e,j)) once per time, then
// contracts against the (sparse) basis entries.
std::vector<Operator> images_from_gathered(const Operator& gathered, Eigen::Index d_sys,
                                           Eigen::Index d_env,
                                           const std::vector<Operator>& basis) {
  std::vector<Operator> overlap(static_cast<std::size_t>(d_sys * d_sys));
  for (Eigen::Index i = 0; i < d_sys; ++i) {
    for (Eigen::Index j = 0; j < d_sys; ++j) {
      Operator k = Operator::Zero(d_sys, d_sys);
      for (Eigen::Index s = 0; s < d_sys; ++s)
        for (Eigen::Index sp = 0; sp < d_sys; ++sp) {
          Complex acc{0.0, 0.0};
          for (Eigen::Index e = 0; e < d_env; ++e)
            acc += gathered(s * d_env + e, i) * std::conj(gathered(sp * d_env + e, j));
          k(s, sp) = acc;
        }
      overlap[static_cast<std::size_t>(i * d_sys + j)] = std::move(k);
    }
  }
  std::vector<Operator> images;
  images.reserve(basis.size());
  for (const Operator& b : basis) {
    Operator img = Operator::Zero(d_sys, d_sys);
    for (Eigen::Index i = 0; i < d_sys; ++i)
      for (Eigen::Index j = 0; j < d_sys; ++j) {
        const Complex v = b(i, j);
        if (v != Complex{0.0, 0.0}) img += v * overlap[static_cast<std::size_t>(i * d_sys + j)];
      }
    images.push_back(std::move(img));
  }
  return images;
}

}  // namespace

std::vector<Operator> pauli_basis(int n_s) {
  if (n_s < 1 || n_s > max_register_qubits()) {
    throw std::invalid_argument("pauli_basis: n_S out of range");
  }
  const double norm = std::pow(2.0, -0.5 * n_s);
  std::vector<Operator> basis;
  basis.reserve(std::size_t{1} << (2 * n_s));
  for (std::size_t word = 0; word < (std::size_t{1} << (2 * n_s)); ++word) {
    Operator b = Operator::Identity(1, 1);
    for (int q = 0; q < n_s; ++q) {
      const int digit = static_cast<int>((word >> (2 * (n_s - 1 - q))) & 3);
      b = kron(b, pauli(digit));
    }
    basis.push_back(norm * b);
  }
  return basis;
}

Eigen::VectorXd pauli_coefficients(const Operator& hermitian, int n_s) {
  const std::vector<Operator> basis = pauli_basis(n_s);
  const Eigen::Index dim = Eigen::Index{1} << n_s;
  if (hermitian.rows() != dim || hermitian.cols() != dim) {
    throw std::invalid_argument("pauli_coefficients: dimension mismatch");
  }
  Eigen::VectorXd coeffs(static_cast<Eigen::Index>(basis.size()));
  for (std::size_t k = 0; k < basis.size(); ++k) {
    Complex acc{0.0, 0.0};
    const Operator& b = basis[k];
    for (Eigen::Index i = 0; i < dim; ++i)
      for (Eigen::Index j = 0; j < dim; ++j) {
        const Complex v = b(i, j);
        if (v != Complex{0.0, 0.0}) acc += v * hermitian(j, i);
      }
    coeffs(static_cast<Eigen::Index>(k)) = acc.real();
  }
  return coeffs;
}

ChannelSweep::ChannelSweep(const Engine& engine, std::vector<double> times,
                           std::vector<int> keep)
    : keep_(std::move(keep)), times_(std::move(times)) {
  validate_keep(engine, keep_);
  std::sort(keep_.begin(), keep_.end());
  n_s_ = static_cast<int>(keep_.size());
  const int n = engine.qubit_count();
  d_sys_ = Eigen::Index{1} << n_s_;
  d_env_ = Eigen::Index{1} << (n - n_s_);
  basis_ = pauli_basis(n_s_);
  const Operator isometry = embedding_isometry(n, keep_);
  const std::vector<Operator> evolved = engine.propagate(isometry, times_);
  gathered_.reserve(evolved.size());
  for (const Operator& w : evolved) gathered_.push_back(gather_rows(w, n, keep_));
}

ChannelSnapshot ChannelSweep::snapshot(std::size_t i) const {
  ChannelSnapshot snap;
  snap.n_s = n_s_;
  snap.t = times_.at(i);
  snap.subsystem = keep_;
  snap.basis_images = images_from_gathered(gathered_[i], d_sys_, d_env_, basis_);
  return snap;
}

ChannelSnapshot channel_at(const Engine& engine, double t, int n_s) {
  return channel_at(engine, t, leading_qubits(n_s));
}

ChannelSnapshot channel_at(const Engine& engine, double t, const std::vector<int>& keep) {
  ChannelSweep sweep(engine, {t}, keep);
  return sweep.snapshot(0);
}

std::vector<ChannelSnapshot> channel_series(const Engine& engine,
                                            const std::vector<double>& times, int n_s,
                                            Exec exec) {
  ChannelSweep sweep(engine, times, leading_qubits(n_s));
  std::vector<ChannelSnapshot> out(times.size());
  parallel_for(times.size(), exec, [&](std::size_t i) { out[i] = sweep.snapshot(i); });
  return out;
}

DensityMatrix apply(const ChannelSnapshot& snapshot, const DensityMatrix& rho) {
  const Eigen::Index dim = Eigen::Index{1} << snapshot.n_s;
  if (rho.mat.rows() != dim || rho.mat.cols() != dim) {
    throw std::invalid_argument("apply: input dimension does not match the snapshot subsystem");
  }
  const Eigen::VectorXd coeffs = pauli_coefficients(rho.mat, snapshot.n_s);
  Operator out = Operator::Zero(dim, dim);
  for (Eigen::Index k = 0; k < coeffs.size(); ++k) {
    out += coeffs(k) * snapshot.basis_images[static_cast<std::size_t>(k)];
  }
  return {snapshot.n_s, std::move(out)};
}

}  // namespace infoflux
