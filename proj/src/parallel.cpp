#include "coldgen/parallel.hpp"

#include <cstdlib>
#include <string>

#ifdef COLDGEN_HAVE_OPENMP
#include <omp.h>
#endif

namespace coldgen {

namespace {
#ifdef COLDGEN_HAVE_OPENMP
const int default_threads = omp_get_max_threads();
#endif
}  // namespace

void set_thread_count(int n) {
#ifdef COLDGEN_HAVE_OPENMP
  omp_set_num_threads(n > 0 ? n : default_threads);
#else
  (void)n;
#endif
}

int thread_count() {
#ifdef COLDGEN_HAVE_OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

void apply_thread_env() {
  const char* raw = std::getenv("COLDGEN_THREADS");
  if (raw == nullptr) return;
  try {
    set_thread_count(std::stoi(raw));
  } catch (const std::exception&) {
    set_thread_count(0);
  }
}

}  // namespace coldgen
