#include "infoflux/qstate.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace infoflux {

void validate(const PureState& psi) {
  if (psi.qubit_count < 1 || psi.qubit_count > max_register_qubits()) {
    throw std::invalid_argument("PureState: qubit_count out of range");
  }
  if (psi.amps.size() != (Eigen::Index{1} << psi.qubit_count)) {
    throw std::invalid_argument("PureState: amplitude count does not match qubit_count");
  }
  if (std::abs(psi.amps.squaredNorm() - 1.0) > tol::normalization) {
    throw std::invalid_argument("PureState: not normalized");
  }
}

void validate(const DensityMatrix& rho) {
  if (rho.qubit_count < 1 || rho.qubit_count > max_register_qubits()) {
    throw std::invalid_argument("DensityMatrix: qubit_count out of range");
  }
  const Eigen::Index dim = Eigen::Index{1} << rho.qubit_count;
  if (rho.mat.rows() != dim || rho.mat.cols() != dim) {
    throw std::invalid_argument("DensityMatrix: dimension does not match qubit_count");
  }
  if (!is_hermitian(rho.mat)) throw std::invalid_argument("DensityMatrix: not Hermitian");
  if (std::abs(rho.mat.trace().real() - 1.0) > tol::normalization) {
    throw std::invalid_argument("DensityMatrix: trace is not 1");
  }
  Eigen::SelfAdjointEigenSolver<Operator> solver(rho.mat, Eigen::EigenvaluesOnly);
  if (solver.eigenvalues().minCoeff() < -tol::positivity) {
    throw std::invalid_argument("DensityMatrix: negative eigenvalue");
  }
}

PureState basis_state(int n, std::uint64_t index) {
  if (n < 1 || n > max_register_qubits()) throw std::invalid_argument("basis_state: n out of range");
  const Eigen::Index dim = Eigen::Index{1} << n;
  if (index >= static_cast<std::uint64_t>(dim)) {
    throw std::invalid_argument("basis_state: index out of range");
  }
  PureState psi{n, StateVector::Zero(dim)};
  psi.amps(static_cast<Eigen::Index>(index)) = 1.0;
  return psi;
}

PureState uniform_superposition(int n) {
  if (n < 1 || n > max_register_qubits()) {
    throw std::invalid_argument("uniform_superposition: n must be in [1, " +
                                std::to_string(max_register_qubits()) + "]");
  }
  const Eigen::Index dim = Eigen::Index{1} << n;
  return {n, StateVector::Constant(dim, Complex(1.0 / std::sqrt(static_cast<double>(dim)), 0.0))};
}

std::pair<PureState, PureState> haar_orthogonal_qubit_pair(SplitMix64& rng) {
  const double cos_theta = 2.0 * rng.uniform() - 1.0;
  const double phi = 2.0 * std::numbers::pi * rng.uniform();
  const double half = 0.5 * std::acos(cos_theta);
  const Complex phase = std::exp(Complex(0.0, phi));
  PureState psi{1, StateVector(2)}, perp{1, StateVector(2)};
  psi.amps << Complex(std::cos(half), 0.0), phase * std::sin(half);
  perp.amps << Complex(std::sin(half), 0.0), -phase * std::cos(half);
  return {psi, perp};
}

namespace {

StateVector gaussian_vector(Eigen::Index dim, SplitMix64& rng) {
  StateVector v(dim);
  for (Eigen::Index i = 0; i < dim; ++i) v(i) = Complex(rng.normal(), rng.normal());
  return v;
}

}  // namespace

std::pair<PureState, PureState> haar_orthogonal_pair_multiqubit(int n_s, SplitMix64& rng) {
  if (n_s < 1 || n_s > 4) {
    throw std::invalid_argument("haar_orthogonal_pair_multiqubit: n_S must be in [1, 4]");
  }
  const Eigen::Index dim = Eigen::Index{1} << n_s;
  StateVector a = gaussian_vector(dim, rng);
  a /= a.norm();
  for (int attempt = 0; attempt < 10; ++attempt) {
    StateVector b = gaussian_vector(dim, rng);
    b -= a * (a.dot(b));  // Eigen dot conjugates the first argument
    const double norm = b.norm();
    if (norm > 1e-8) {
      b /= norm;
      return {PureState{n_s, std::move(a)}, PureState{n_s, std::move(b)}};
    }
  }
  throw std::runtime_error("haar_orthogonal_pair_multiqubit: degenerate draws");
}

DensityMatrix density_of(const PureState& psi) {
  return {psi.qubit_count, psi.amps * psi.amps.adjoint()};
}

double purity(const DensityMatrix& rho) {
  return (rho.mat * rho.mat).trace().real();
}

}  // namespace infoflux
