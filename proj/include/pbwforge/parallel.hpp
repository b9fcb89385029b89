#pragma once

#include <cstdlib>
#include <string>
#include <thread>

namespace pbw {

// Worker count from PBWFORGE_THREADS, else the hardware concurrency; never 0.
inline unsigned worker_threads() {
  if (const char* env = std::getenv("PBWFORGE_THREADS")) {
    try {
      const long n = std::stol(env);
      if (n >= 1) return static_cast<unsigned>(n);
    } catch (const std::exception&) {
    }
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw ? hw : 1;
}

}  // namespace pbw
