#pragma once

// Central numeric tolerance table. Every module pins its checks against these
// constants so there is a single audit point.

namespace infoflux::tol {

inline constexpr double hermiticity = 1e-10;       // max |A - A^dag| entry
inline constexpr double unitarity = 1e-9;          // max |U^dag U - I| entry
inline constexpr double reconstruction_per_dim = 1e-9;  // eig: |V L V^dag - H|_F <= this * dim
inline constexpr double normalization = 1e-10;     // state norm, trace of a density matrix
inline constexpr double orthogonality = 1e-12;     // sampled state pairs
inline constexpr double trace_preservation = 1e-12;  // partial trace
inline constexpr double positivity = 1e-9;         // min eigenvalue floor of a density matrix
inline constexpr double channel_positivity = 1e-8;  // min eigenvalue floor after a channel
inline constexpr double integrator_convergence = 1e-6;  // |psi_dt(T) - psi_dt/2(T)|

}  // namespace infoflux::tol
