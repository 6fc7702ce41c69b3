#include "hypsig/parallel.hpp"

#include <cstdlib>

namespace hypsig {

int default_thread_count() {
  if (const char* env = std::getenv("HYPSIG_THREADS")) {
    const int v = std::atoi(env);
    if (v >= 1) return v;
  }
  return 1;
}

}  // namespace hypsig
