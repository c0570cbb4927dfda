#include "besovlab/parallel.hpp"

#include <cstdlib>
#include <string>

namespace besovlab {

unsigned default_thread_count() {
  if (const char* env = std::getenv("BESOVLAB_THREADS")) {
    try {
      const long v = std::stol(env);
      if (v > 0) return static_cast<unsigned>(v);
    } catch (const std::exception&) {
      // fall through to hardware concurrency
    }
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1u : hw;
}

}  // namespace besovlab
