#include "infoflux/entangle.hpp"

#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace infoflux {

namespace {

// Reshape the amplitudes into a (subset x complement) matrix and return
// |M M^dag|_F^2. Works on whichever side of the cut is smaller.
double purity_of_cut(const PureState& psi, std::uint32_t mask, int n) {
  const int size = std::popcount(mask);
  const bool flip = size > n - size;
  const std::uint32_t rows_mask = flip ? (~mask & ((1u << n) - 1u)) : mask;
  const int a = std::popcount(rows_mask);
  const int b = n - a;

  std::vector<int> row_qubits, col_qubits;
  for (int q = 0; q < n; ++q) {
    // mask bit q corresponds to qubit q (qubit 0 = most significant basis bit)
    if (rows_mask & (1u << q)) {
      row_qubits.push_back(q);
    } else {
      col_qubits.push_back(q);
    }
  }
  Eigen::MatrixXcd m(Eigen::Index{1} << a, Eigen::Index{1} << b);
  const Eigen::Index dim = psi.dim();
  for (Eigen::Index g = 0; g < dim; ++g) {
    Eigen::Index r = 0, c = 0;
    for (int bit = 0; bit < a; ++bit)
      if ((g >> (n - 1 - row_qubits[bit])) & 1) r |= Eigen::Index{1} << (a - 1 - bit);
    for (int bit = 0; bit < b; ++bit)
      if ((g >> (n - 1 - col_qubits[bit])) & 1) c |= Eigen::Index{1} << (b - 1 - bit);
    m(r, c) = psi.amps(g);
  }
  const Eigen::MatrixXcd gram = m * m.adjoint();
  return gram.squaredNorm();
}

}  // namespace

double marginal_purity(const PureState& psi, const std::vector<int>& keep) {
  const int n = psi.qubit_count;
  if (keep.empty() || static_cast<int>(keep.size()) > n) {
    throw std::invalid_argument("marginal_purity: invalid subset");
  }
  std::uint32_t mask = 0;
  for (int q : keep) {
    if (q < 0 || q >= n) throw std::invalid_argument("marginal_purity: qubit index out of range");
    mask |= 1u << q;
  }
  return purity_of_cut(psi, mask, n);
}

double bipartite_concurrence(const PureState& psi) {
  validate(psi);
  if (psi.qubit_count < 2) throw std::invalid_argument("bipartite_concurrence: need >= 2 qubits");
  const double p = purity_of_cut(psi, 1u << 0, psi.qubit_count);
  // purity carries O(eps) roundoff; a deficit within that noise is zero, and
  // taking the square root of noise would inflate it to ~1e-8
  const double deficit = 2.0 * (1.0 - p);
  const double noise_floor = 64.0 * std::numeric_limits<double>::epsilon();
  return deficit <= noise_floor ? 0.0 : std::sqrt(deficit);
}

double multipartite_concurrence(const PureState& psi) {
  validate(psi);
  const int n = psi.qubit_count;
  if (n < 2) throw std::invalid_argument("multipartite_concurrence: need >= 2 qubits");
  if (n > 10) {
    throw std::length_error("multipartite_concurrence: the bipartition sum is limited to n <= 10");
  }
  const std::uint32_t full = (1u << n) - 1u;
  double purity_sum = 0.0;
  for (std::uint32_t mask = 1; mask < full; ++mask) {
    const int size = std::popcount(mask);
    // each subset pairs with its complement at equal purity; evaluate the
    // canonical representative and count it twice
    const bool canonical = 2 * size < n || (2 * size == n && (mask & 1u));
    if (!canonical) continue;
    purity_sum += 2.0 * purity_of_cut(psi, mask, n);
  }
  const double subset_count = std::pow(2.0, n) - 2.0;
  const double bracket = subset_count - purity_sum;
  // each of the 2^n - 2 purities carries O(eps) roundoff; a bracket within
  // that accumulated noise of zero is zero
  const double noise_floor = subset_count * 16.0 * std::numeric_limits<double>::epsilon();
  if (bracket <= noise_floor) return 0.0;
  return std::pow(2.0, 1.0 - 0.5 * n) * std::sqrt(bracket);
}

std::vector<EntanglementRecord> entanglement_series(const Engine& engine,
                                                    const std::vector<double>& grid, Exec exec) {
  const PureState start = uniform_superposition(engine.qubit_count());
  const std::vector<Operator> snaps = engine.propagate(start.amps, grid);
  std::vector<EntanglementRecord> out(grid.size());
  parallel_for(grid.size(), exec, [&](std::size_t i) {
    const PureState state{engine.qubit_count(), snaps[i].col(0)};
    out[i] = {grid[i], bipartite_concurrence(state), multipartite_concurrence(state)};
  });
  return out;
}

}  // namespace infoflux
