#pragma once

#include <cstddef>
#include <vector>

namespace qlo::parallel {

// Applies QLO_THREADS (positive integer) as the OpenMP thread cap. Returns the
// cap in effect; invalid values are rejected with ValidationError.
int configure_from_env();
void set_max_threads(int n);
int max_threads();

// Fixed block size for reductions, so floating-point sums do not depend on the
// number of threads.
inline constexpr std::size_t kReductionBlock = 4096;

// Sums partials in index order.
template <typename T>
T ordered_sum(const std::vector<T>& partials) {
  T total{};
  for (const T& v : partials) total += v;
  return total;
}

}  // namespace qlo::parallel
