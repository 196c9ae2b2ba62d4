#pragma once

#include <vector>

#include "infoflux/engines.hpp"
#include "infoflux/parallel.hpp"
#include "infoflux/qstate.hpp"

// Reduced dynamics of an n_S-qubit subsystem under an engine's global
// unitary: the remaining qubits start in the uniform superposition, the
// bundle is evolved, and the environment is traced out. A snapshot stores the
// images of a Hermitian operator basis, so applying the map to any input is
// a linear combination; this turns the per-sample cost of the maximization
// kernels from a global simulation into arithmetic in the subsystem space.

namespace infoflux {

// Tensor products of {I, X, Y, Z} / sqrt(2) over n_S qubits: a Hermitian,
// Hilbert-Schmidt orthonormal basis. Index digits run base-4 with qubit 0
// (most significant) first.
std::vector<Operator> pauli_basis(int n_s);

// Real expansion coefficients of a Hermitian operator in that basis.
Eigen::VectorXd pauli_coefficients(const Operator& hermitian, int n_s);

struct ChannelSnapshot {
  int n_s = 0;
  double t = 0.0;
  std::vector<int> subsystem;          // kept qubit indices, ascending
  std::vector<Operator> basis_images;  // 4^{n_S} images of the basis above
};

// Map acting on the first n_S qubits (or an explicit kept-index set) at time
// t. Requires n_S <= n - 1.
ChannelSnapshot channel_at(const Engine& engine, double t, int n_s);
ChannelSnapshot channel_at(const Engine& engine, double t, const std::vector<int>& keep);

// Snapshots at many times from a single propagation sweep.
std::vector<ChannelSnapshot> channel_series(const Engine& engine,
                                            const std::vector<double>& times, int n_s,
                                            Exec exec = default_exec());

// Expand rho in the basis and recombine the stored images.
DensityMatrix apply(const ChannelSnapshot& snapshot, const DensityMatrix& rho);

// Evolved isometry columns for many capture times; snapshots are materialized
// on demand so long sweeps at n_S = 4 do not hold 4^{n_S} images per time.
class ChannelSweep {
 public:
  ChannelSweep(const Engine& engine, std::vector<double> times, std::vector<int> keep);

  std::size_t size() const { return times_.size(); }
  double time(std::size_t i) const { return times_[i]; }
  int subsystem_qubits() const { return n_s_; }
  ChannelSnapshot snapshot(std::size_t i) const;

 private:
  int n_s_;
  std::vector<int> keep_;
  std::vector<double> times_;
  Eigen::Index d_sys_ = 0, d_env_ = 0;
  std::vector<Operator> basis_;
  std::vector<Operator> gathered_;  // per time: (d_sys * d_env) x d_sys, row = s * d_env + e
};

}  // namespace infoflux
