#pragma once

#include <cstddef>
#include <string>

namespace qbek::log {

enum class Level { debug = 0, info = 1, warn = 2, error = 3, off = 4 };

/// Current threshold. Initialized from the QBEK_LOG environment variable
/// (debug|info|warn|error|off) on first use; defaults to warn.
Level level();
void set_level(Level level);

void debug(const std::string& message);
void info(const std::string& message);
void warn(const std::string& message);
void error(const std::string& message);

/// Number of warn/error messages emitted since the last reset. Commands
/// report this so callers can see how many inputs needed attention.
std::size_t warning_count();
void reset_warning_count();

}  // namespace qbek::log
