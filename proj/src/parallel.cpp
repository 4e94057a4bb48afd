#include "inls/parallel.hpp"

#include <cstdlib>
#include <string>

#include <omp.h>

namespace inls::parallel {

int thread_count() {
  if (const char* env = std::getenv(kThreadsEnv); env != nullptr && *env != '\0') {
    try {
      const int n = std::stoi(env);
      if (n > 0) return n;
    } catch (const std::exception&) {
      // fall through to the default
    }
  }
  return omp_get_num_procs();
}

void configure_threads() { omp_set_num_threads(thread_count()); }

}  // namespace inls::parallel
