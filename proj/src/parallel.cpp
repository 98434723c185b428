#include "enccdv/parallel.hpp"

#include <cstdlib>
#include <string>

namespace enccdv {

int resolve_workers(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("ENCCDV_WORKERS")) {
    int parsed = std::atoi(env);
    if (parsed > 0) return parsed;
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

}  // namespace enccdv
