#include "infoflux/parallel.hpp"

namespace infoflux {

namespace {
Exec g_default = Exec::Parallel;
int g_workers = 0;
}  // namespace

Exec default_exec() noexcept { return g_default; }

void set_default_exec(Exec e) noexcept { g_default = e; }

void set_worker_count(int threads) noexcept {
  g_workers = threads;
#ifdef _OPENMP
  if (threads > 0) omp_set_num_threads(threads);
#endif
}

int worker_count() noexcept {
#ifdef _OPENMP
  return g_workers > 0 ? g_workers : omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace infoflux
