#pragma once

#include <cstdint>
#include <utility>

#include "infoflux/qla.hpp"
#include "infoflux/rng.hpp"

// Qubit-register state construction: computational basis states, the uniform
// superposition, Haar-random pure states with orthogonal partners, and
// density-matrix helpers.

namespace infoflux {

struct PureState {
  int qubit_count = 0;
  StateVector amps;

  Eigen::Index dim() const { return amps.size(); }
};

struct DensityMatrix {
  int qubit_count = 0;
  Operator mat;

  Eigen::Index dim() const { return mat.rows(); }
};

// Throws std::invalid_argument when the normalization / Hermiticity / trace
// invariants are violated.
void validate(const PureState& psi);
void validate(const DensityMatrix& rho);

PureState basis_state(int n, std::uint64_t index);

// H^(x)n |0...0>: every amplitude equals 2^(-n/2). Requires 1 <= n <= cap.
PureState uniform_superposition(int n);

// Single-qubit pair |psi> = cos(theta/2)|0> + e^{i phi} sin(theta/2)|1> and
// its orthogonal complement sin(theta/2)|0> - e^{i phi} cos(theta/2)|1>,
// with cos(theta) uniform on [-1, 1] and phi uniform on [0, 2 pi).
std::pair<PureState, PureState> haar_orthogonal_qubit_pair(SplitMix64& rng);

// First state Haar-uniform on 2^{n_S} dimensions (normalized complex
// Gaussian); second drawn the same way, orthogonalized against the first and
// normalized. 1 <= n_S <= 4.
std::pair<PureState, PureState> haar_orthogonal_pair_multiqubit(int n_s, SplitMix64& rng);

DensityMatrix density_of(const PureState& psi);
double purity(const DensityMatrix& rho);

}  // namespace infoflux
