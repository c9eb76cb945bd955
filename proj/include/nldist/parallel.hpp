#pragma once

namespace nldist {

// Applies the NLDIST_THREADS cap (if set to a positive integer) to the
// OpenMP runtime. Returns the thread count in effect.
int configure_threads_from_env();

int max_threads();
void set_threads(int n);

bool openmp_enabled();

}  // namespace nldist
