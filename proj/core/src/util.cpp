#include "asaiverify/util.hpp"

#include <cstdlib>

namespace asaiverify {

int worker_count_from_env(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("ASAI_VERIFIER_THREADS")) {
    int v = std::atoi(env);
    if (v > 0) return v;
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? int(hw) : 1;
}

}  // namespace asaiverify
