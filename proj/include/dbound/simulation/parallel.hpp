#pragma once

#include <cstddef>
#include <exception>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace dbound::sim {

enum class Execution { serial, parallel };

/// How Monte Carlo kernels run. Results never depend on these settings:
/// every work item draws from its own derived stream and reductions are done
/// afterwards in index order.
struct RunOptions {
  Execution execution = Execution::parallel;
  int threads = 0;  // 0 = OpenMP default
};

inline RunOptions serial_options() { return {Execution::serial, 1}; }

/// Calls body(i) for i in [0, count). Under Execution::parallel the loop is
/// an OpenMP static for; the first exception (by index) is rethrown after
/// the loop.
template <typename Body>
void for_each_index(std::size_t count, const RunOptions& options, Body&& body) {
  if (options.execution == Execution::serial || count < 2) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::vector<std::exception_ptr> errors(count);
  const auto n = static_cast<long long>(count);
#ifdef _OPENMP
  const int threads = options.threads > 0 ? options.threads : omp_get_max_threads();
#pragma omp parallel for schedule(static) num_threads(threads)
#endif
  for (long long i = 0; i < n; ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
      errors[static_cast<std::size_t>(i)] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace dbound::sim
