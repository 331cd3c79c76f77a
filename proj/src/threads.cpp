#include "tll/threads.hpp"

#include <cstdlib>
#include <string>

#include <omp.h>

namespace tll {

void configure_threads_from_env() {
  const char* value = std::getenv("TLL_THREADS");
  if (value == nullptr) return;
  try {
    const int cap = std::stoi(value);
    if (cap > 0) omp_set_num_threads(cap);
  } catch (const std::exception&) {
    // ignored: unparsable cap leaves the OpenMP default in place
  }
}

int max_threads() { return omp_get_max_threads(); }

}  // namespace tll
