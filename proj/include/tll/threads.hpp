#pragma once

namespace tll {

/// Applies the TLL_THREADS cap (if set to a positive integer) to OpenMP.
void configure_threads_from_env();

int max_threads();

}  // namespace tll
