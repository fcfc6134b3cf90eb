#pragma once

#include <cstddef>

namespace coulomb3 {

/// Execution policy for the grid kernels. The serial path is the reference:
/// parallel runs write independent results by index and must produce
/// bit-identical output.
enum class Exec { serial, parallel };

template <class F>
void for_index(std::size_t n, Exec exec, F&& fn) {
#ifdef COULOMB3_HAVE_OPENMP
  if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < static_cast<long long>(n); ++i) {
      fn(static_cast<std::size_t>(i));
    }
    return;
  }
#else
  (void)exec;
#endif
  for (std::size_t i = 0; i < n; ++i) fn(i);
}

}  // namespace coulomb3
