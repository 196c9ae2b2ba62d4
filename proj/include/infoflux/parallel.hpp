#pragma once

#include <cstddef>

#ifdef _OPENMP
#include <omp.h>
#endif

// Execution policy for the data-parallel kernels. Every kernel writes
// per-index results into preallocated slots and reduces serially afterwards,
// so Serial and Parallel runs produce bit-identical output for any thread
// count.

namespace infoflux {

enum class Exec { Serial, Parallel };

// Process-wide default used by the experiment runner; kernels also accept an
// explicit policy.
Exec default_exec() noexcept;
void set_default_exec(Exec e) noexcept;

// Requested worker count for Parallel regions (0 = runtime default).
void set_worker_count(int threads) noexcept;
int worker_count() noexcept;

template <typename Fn>
void parallel_for(std::size_t count, Exec exec, Fn&& fn) {
  if (exec == Exec::Parallel) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < static_cast<long long>(count); ++i) {
      fn(static_cast<std::size_t>(i));
    }
    return;
#endif
  }
  for (std::size_t i = 0; i < count; ++i) fn(i);
}

}  // namespace infoflux
