#include "gop/log.hpp"

#include <cstdlib>
#include <cstring>

namespace gop {

LogLevel log_level() {
  static const LogLevel level = [] {
    const char* env = std::getenv("GOP_LOG");
    if (env == nullptr) return LogLevel::error;
    if (std::strcmp(env, "debug") == 0) return LogLevel::debug;
    if (std::strcmp(env, "info") == 0) return LogLevel::info;
    return LogLevel::error;
  }();
  return level;
}

}  // namespace gop
