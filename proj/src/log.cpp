// Stderr logging gated by the ICC_LOG environment variable.
#include "icc/log.hpp"

#include <cstdarg>
#include <cstdio>
#include <cstdlib>

namespace icc {

int log_level() {
  static int level = [] {
    const char* env = std::getenv("ICC_LOG");
    if (env == nullptr || *env == '\0') return 0;
    int parsed = std::atoi(env);
    return parsed < 0 ? 0 : parsed;
  }();
  return level;
}

void logf(int level, const char* fmt, ...) {
  if (log_level() < level) return;
  std::fprintf(stderr, "[icc] ");
  va_list args;
  va_start(args, fmt);
  std::vfprintf(stderr, fmt, args);
  va_end(args);
  std::fprintf(stderr, "\n");
}

}  // namespace icc
