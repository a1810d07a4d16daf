#include "hyperperc/parallel.hpp"

#include <omp.h>

#include <atomic>
#include <cstdlib>
#include <string>

namespace hyperperc {

namespace {
std::atomic<int> g_threads{0};
}

int resolve_threads(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("HYPERPERC_THREADS")) {
    try {
      const int n = std::stoi(env);
      if (n > 0) return n;
    } catch (const std::exception&) {
      // fall through to the OpenMP default
    }
  }
  return omp_get_max_threads();
}

void set_default_threads(int threads) { g_threads = threads > 0 ? threads : 0; }

int default_threads() {
  const int t = g_threads.load();
  return t > 0 ? t : resolve_threads(0);
}

}  // namespace hyperperc
