#pragma once

#include <cstddef>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace rdlab {

inline int hardware_jobs() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

// Index-parallel loop. jobs == 1 is the serial reference path used by the
// tests and benchmarks; jobs == 0 picks the OpenMP default thread count.
// Bodies must be independent per index (writers target disjoint slots).
template <typename Body>
void parallel_for(std::size_t count, int jobs, Body&& body) {
  if (jobs == 1 || count < 2) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
#ifdef _OPENMP
  const int threads = jobs > 0 ? jobs : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(threads)
  for (long long i = 0; i < static_cast<long long>(count); ++i) {
    body(static_cast<std::size_t>(i));
  }
#else
  (void)jobs;
  for (std::size_t i = 0; i < count; ++i) body(i);
#endif
}

}  // namespace rdlab
