#include "orbita/parallel.hpp"

#include <cstdlib>
#include <string>

namespace orbita {

int default_threads() {
  if (const char* env = std::getenv("ORBITA_THREADS")) {
    try {
      const int n = std::stoi(env);
      if (n >= 1) return n;
    } catch (const std::exception&) {
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace orbita
