#ifndef GOP_LOG_HPP
#define GOP_LOG_HPP

#include <iostream>
#include <sstream>

namespace gop {

enum class LogLevel { error = 0, info = 1, debug = 2 };

/// Current verbosity, read once from the GOP_LOG environment variable
/// (error | info | debug; default error).
LogLevel log_level();

}  // namespace gop

#define GOP_LOG_AT(level, expr)                                     \
  do {                                                              \
    if (::gop::log_level() >= (level)) {                            \
      std::ostringstream gop_log_os;                                \
      gop_log_os << expr;                                           \
      std::cerr << "[gop] " << gop_log_os.str() << std::endl;       \
    }                                                               \
  } while (0)

#define GOP_LOG_INFO(expr) GOP_LOG_AT(::gop::LogLevel::info, expr)
#define GOP_LOG_DEBUG(expr) GOP_LOG_AT(::gop::LogLevel::debug, expr)

#endif  // GOP_LOG_HPP
