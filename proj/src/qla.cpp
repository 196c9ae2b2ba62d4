#include "infoflux/qla.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace infoflux {

int max_register_qubits() {
  static const int cached = [] {
    if (const char* env = std::getenv("INFOFLUX_MAX_QUBITS")) {
      const int v = std::atoi(env);
      if (v >= 1 && v <= 30) return v;
    }
    return 12;
  }();
  return cached;
}

Eigen::Index max_register_dim() {
  return Eigen::Index{1} << max_register_qubits();
}

bool is_hermitian(const Operator& a, double tolerance) {
  if (a.rows() != a.cols()) return false;
  return (a - a.adjoint()).cwiseAbs().maxCoeff() <= tolerance;
}

bool is_unitary(const Operator& a, double tolerance) {
  if (a.rows() != a.cols()) return false;
  const Operator gram = a.adjoint() * a;
  return (gram - Operator::Identity(a.rows(), a.cols())).cwiseAbs().maxCoeff() <= tolerance;
}

Operator kron(const Operator& a, const Operator& b) {
  const Eigen::Index ar = a.rows(), ac = a.cols(), br = b.rows(), bc = b.cols();
  if (ar * br > max_register_dim() || ac * bc > max_register_dim()) {
    throw std::length_error("kron: result dimension " + std::to_string(ar * br) +
                            " exceeds the register cap of 2^" +
                            std::to_string(max_register_qubits()));
  }
  Operator out(ar * br, ac * bc);
  for (Eigen::Index i = 0; i < ar; ++i)
    for (Eigen::Index j = 0; j < ac; ++j)
      out.block(i * br, j * bc, br, bc) = a(i, j) * b;
  return out;
}

Operator partial_trace(const Operator& rho, int qubit_count, const std::vector<int>& keep) {
  const Eigen::Index dim = Eigen::Index{1} << qubit_count;
  if (rho.rows() != dim || rho.cols() != dim) {
    throw std::invalid_argument("partial_trace: operator dimension does not match qubit_count");
  }
  if (keep.empty()) throw std::invalid_argument("partial_trace: keep set must be nonempty");
  std::vector<bool> kept(qubit_count, false);
  for (int q : keep) {
    if (q < 0 || q >= qubit_count) {
      throw std::invalid_argument("partial_trace: qubit index " + std::to_string(q) +
                                  " out of range");
    }
    if (kept[q]) throw std::invalid_argument("partial_trace: duplicate qubit index");
    kept[q] = true;
  }

  std::vector<int> keep_sorted, traced;
  for (int q = 0; q < qubit_count; ++q) (kept[q] ? keep_sorted : traced).push_back(q);

  const int na = static_cast<int>(keep_sorted.size());
  const int ne = qubit_count - na;
  const Eigen::Index da = Eigen::Index{1} << na;
  const Eigen::Index de = Eigen::Index{1} << ne;

  // global-index contribution of each sub-label, qubit 0 = MSB
  std::vector<Eigen::Index> abase(da, 0), ebase(de, 0);
  for (Eigen::Index a = 0; a < da; ++a)
    for (int bit = 0; bit < na; ++bit)
      if ((a >> (na - 1 - bit)) & 1) abase[a] |= Eigen::Index{1} << (qubit_count - 1 - keep_sorted[bit]);
  for (Eigen::Index e = 0; e < de; ++e)
    for (int bit = 0; bit < ne; ++bit)
      if ((e >> (ne - 1 - bit)) & 1) ebase[e] |= Eigen::Index{1} << (qubit_count - 1 - traced[bit]);

  Operator out = Operator::Zero(da, da);
  for (Eigen::Index a = 0; a < da; ++a)
    for (Eigen::Index b = 0; b < da; ++b) {
      Complex acc{0.0, 0.0};
      for (Eigen::Index e = 0; e < de; ++e) acc += rho(abase[a] | ebase[e], abase[b] | ebase[e]);
      out(a, b) = acc;
    }
  return out;
}

HermEig herm_eig(const Operator& h) {
  if (!is_hermitian(h)) throw std::invalid_argument("herm_eig: input is not Hermitian");
  Eigen::SelfAdjointEigenSolver<Operator> solver(h);
  if (solver.info() != Eigen::Success) throw std::runtime_error("herm_eig: solver failed");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

Operator matexp_unitary(const Operator& h, double t) {
  const HermEig eig = herm_eig(h);
  const Eigen::Index dim = h.rows();
  Eigen::VectorXcd phases(dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    phases(i) = std::exp(Complex(0.0, -t * eig.eigenvalues(i)));
  }
  return eig.eigenvectors * phases.asDiagonal() * eig.eigenvectors.adjoint();
}

double trace_norm_hermitian(const Operator& a) {
  if (!is_hermitian(a)) throw std::invalid_argument("trace_norm_hermitian: input is not Hermitian");
  if (a.rows() == 2) {
    // eigenvalues mu +- r of [[p, c], [conj(c), q]]
    const double p = a(0, 0).real(), q = a(1, 1).real();
    const double mu = 0.5 * (p + q);
    const double r = std::hypot(0.5 * (p - q), std::abs(a(0, 1)));
    return std::abs(mu + r) + std::abs(mu - r);
  }
  Eigen::SelfAdjointEigenSolver<Operator> solver(a, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw std::runtime_error("trace_norm_hermitian: solver failed");
  return solver.eigenvalues().cwiseAbs().sum();
}

Operator identity_op(Eigen::Index dim) { return Operator::Identity(dim, dim); }

const Operator& pauli(int which) {
  static const Operator table[4] = {
      (Operator(2, 2) << 1, 0, 0, 1).finished(),
      (Operator(2, 2) << 0, 1, 1, 0).finished(),
      (Operator(2, 2) << 0, Complex(0, -1), Complex(0, 1), 0).finished(),
      (Operator(2, 2) << 1, 0, 0, -1).finished(),
  };
  if (which < 0 || which > 3) throw std::invalid_argument("pauli: index must be 0..3");
  return table[which];
}

}  // namespace infoflux
