#pragma once

namespace su11 {

// Grid kernels run either as a plain loop (the reference used in tests) or
// under OpenMP. Each body writes only its own slot, so both modes produce
// bit-identical results.
enum class ExecMode { serial, openmp };

template <typename F>
void parallel_for(int n, ExecMode mode, F&& body) {
  if (mode == ExecMode::serial) {
    for (int i = 0; i < n; ++i) {
      body(i);
    }
    return;
  }
#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < n; ++i) {
    body(i);
  }
}

}  // namespace su11
