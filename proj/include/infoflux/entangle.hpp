#pragma once

#include <vector>

#include "infoflux/engines.hpp"
#include "infoflux/parallel.hpp"

// Entanglement diagnostics along a trajectory: the pure-state concurrence
// across the first-qubit : rest cut, and the aggregate concurrence over all
// bipartitions.

namespace infoflux {

// tr(rho_A^2) of the marginal on the given qubit subset of a pure state.
double marginal_purity(const PureState& psi, const std::vector<int>& keep);

// sqrt(2 (1 - tr rho_1^2)) for the one-qubit marginal of qubit 0; in [0, 1].
double bipartite_concurrence(const PureState& psi);

// 2^{1 - n/2} sqrt((2^n - 2) - sum over all nontrivial marginals of their
// purity). Vanishes on product states. The sum pairs each subset with its
// complement (equal purity for a pure global state), so only half the
// subsets are evaluated. Requires n <= 10.
double multipartite_concurrence(const PureState& psi);

struct EntanglementRecord {
  double t = 0.0;
  double c_bipartite = 0.0;
  double e_multipartite = 0.0;
};

std::vector<EntanglementRecord> entanglement_series(const Engine& engine,
                                                    const std::vector<double>& grid,
                                                    Exec exec = default_exec());

}  // namespace infoflux
