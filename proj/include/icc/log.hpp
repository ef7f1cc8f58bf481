// Diagnostic logging to stderr, gated by the ICC_LOG environment variable:
// unset or 0 = quiet, 1 = progress, 2 = debug.
#pragma once

namespace icc {

int log_level();
void logf(int level, const char* fmt, ...);

}  // namespace icc
