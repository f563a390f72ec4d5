#include "ergopt/parallel.hpp"

#include <cstdlib>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace ergopt {

int worker_count() {
  int fallback = 1;
#ifdef _OPENMP
  fallback = omp_get_max_threads();
#endif
  if (const char* env = std::getenv("ERGOPT_THREADS")) {
    try {
      int cap = std::stoi(env);
      if (cap > 0) return cap < fallback ? cap : fallback;
    } catch (const std::exception&) {
      // ignore malformed values
    }
  }
  return fallback;
}

}  // namespace ergopt
