#include "densitylab/parallel.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

namespace densitylab {

unsigned thread_count() {
  if (const char* env = std::getenv("DENSITYLAB_THREADS")) {
    try {
      const long v = std::stol(env);
      if (v > 0) return static_cast<unsigned>(v);
    } catch (const std::exception&) {
    }
  }
  static const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  return hw;
}

}  // namespace densitylab
