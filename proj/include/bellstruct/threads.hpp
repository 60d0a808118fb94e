#pragma once

#include <cstdlib>
#include <thread>

namespace bellstruct {

// Worker count for parallel loops: BELLSTRUCT_THREADS if set (>= 1),
// otherwise the hardware concurrency.
inline int worker_count() {
  if (const char* env = std::getenv("BELLSTRUCT_THREADS")) {
    int n = std::atoi(env);
    if (n >= 1) return n;
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

}  // namespace bellstruct
