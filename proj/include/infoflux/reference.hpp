#pragma once

#include <vector>

#include "infoflux/engines.hpp"
#include "infoflux/qstate.hpp"

// Slow, direct implementations kept alongside the production kernels. They
// recompute the same quantities from first principles (dense unitaries,
// literal operator conjugation, exhaustive sums) and serve as the comparison
// targets for the unit, acceptance and benchmark suites.

namespace infoflux::reference {

// Dense global unitary at each requested time. The adiabatic engine is
// reproduced by multiplying dense midpoint-exponential steps over exactly the
// engine's own substep walk, so the two paths target the same discretized
// map. Sized for small registers.
std::vector<Operator> global_unitary(const Engine& engine, const std::vector<double>& times);

// Literal channel action on one basis operator: embed b with the uniform
// environment, conjugate by the dense global unitary, trace the environment
// out. Test scale (n <= 6).
Operator channel_image_direct(const Engine& engine, double t, const Operator& b,
                              const std::vector<int>& keep);

// Direct map evaluation: evolve the input's eigenvectors embedded with the
// uniform environment and partial-trace the evolved global state. Shares only
// Engine::propagate and partial_trace with the production path.
DensityMatrix channel_apply_direct(const Engine& engine, double t, const DensityMatrix& rho,
                                   const std::vector<int>& keep);

// Closed forms for the two analytically solvable engines.
double grover_success_closed_form(int n, int k);
double analog_success_closed_form(int n, double energy, double t);

// Success probability from the two-dimensional invariant-plane problem,
// solved with a dense 2x2 exponential.
double analog_success_two_level(int n, double energy, double t);

// Bipartition sum over every nontrivial subset (no complement pairing),
// each marginal taken with the dense partial trace.
double multipartite_concurrence_direct(const PureState& psi);

}  // namespace infoflux::reference
