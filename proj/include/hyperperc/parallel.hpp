#pragma once

// Replica-parallel map with a serial reference path. Results land in slot i
// for replica i whichever thread computed them, so reductions done afterwards
// in index order are independent of the worker count.

#include <exception>
#include <type_traits>
#include <vector>

namespace hyperperc {

enum class Execution { Serial, Parallel };

/// Worker count: an explicit positive request wins, then HYPERPERC_THREADS,
/// then the OpenMP default.
int resolve_threads(int requested = 0);
void set_default_threads(int threads);
int default_threads();

template <class F>
auto map_replicas(int count, Execution execution, F&& fn) -> std::vector<std::invoke_result_t<F&, int>> {
  using Result = std::invoke_result_t<F&, int>;
  std::vector<Result> out(count);
  if (execution == Execution::Serial || count <= 1) {
    for (int i = 0; i < count; ++i) out[i] = fn(i);
    return out;
  }
  std::vector<std::exception_ptr> errors(count);
#pragma omp parallel for schedule(dynamic, 1) num_threads(default_threads())
  for (int i = 0; i < count; ++i) {
    try {
      out[i] = fn(i);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }
  // Report the failure of the lowest replica, as a serial run would.
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

}  // namespace hyperperc
