#include "qlo/parallel.hpp"

#include <omp.h>

#include <charconv>
#include <cstdlib>
#include <string>
#include <string_view>

#include "qlo/errors.hpp"

namespace qlo::parallel {

int configure_from_env() {
  const char* raw = std::getenv("QLO_THREADS");
  if (raw == nullptr || *raw == '\0') return max_threads();
  std::string_view text(raw);
  int n = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), n);
  if (ec != std::errc() || ptr != text.data() + text.size() || n <= 0) {
    throw ValidationError("QLO_THREADS must be a positive integer, got '" + std::string(text) + "'");
  }
  set_max_threads(n);
  return n;
}

void set_max_threads(int n) {
  if (n <= 0) throw ValidationError("thread count must be positive");
  omp_set_num_threads(n);
}

int max_threads() { return omp_get_max_threads(); }

}  // namespace qlo::parallel
