#pragma once

#include <omp.h>

#include <algorithm>
#include <cstdlib>
#include <utility>

namespace wignerlab {

// Every hot kernel runs either as a plain serial loop (the reference) or as an
// OpenMP loop over independent output points. Reductions never cross this
// boundary: each output point owns a serial compensated sum, so results are
// bit-identical for any thread count.
enum class Exec { serial, parallel };

// WIGNERLAB_THREADS caps OpenMP parallelism; unset means the OpenMP default.
inline int max_threads() {
  static const int cached = [] {
    int limit = omp_get_max_threads();
    if (const char* env = std::getenv("WIGNERLAB_THREADS")) {
      const int req = std::atoi(env);
      if (req >= 1) limit = std::min(limit, req);
    }
    return std::max(limit, 1);
  }();
  return cached;
}

template <class Fn>
void parallel_for(int n, Exec exec, Fn&& fn) {
  if (exec == Exec::serial) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  const int nt = max_threads();
#pragma omp parallel for schedule(static) num_threads(nt)
  for (int i = 0; i < n; ++i) fn(i);
}

}  // namespace wignerlab
