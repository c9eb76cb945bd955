#include "nldist/parallel.hpp"

#include <cstdlib>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace nldist {

bool openmp_enabled() {
#ifdef _OPENMP
  return true;
#else
  return false;
#endif
}

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

void set_threads(int n) {
#ifdef _OPENMP
  if (n > 0) omp_set_num_threads(n);
#else
  (void)n;
#endif
}

int configure_threads_from_env() {
  if (const char* env = std::getenv("NLDIST_THREADS")) {
    try {
      const int n = std::stoi(env);
      if (n > 0 && n < max_threads()) set_threads(n);
    } catch (const std::exception&) {
      // ignore malformed values
    }
  }
  return max_threads();
}

}  // namespace nldist
