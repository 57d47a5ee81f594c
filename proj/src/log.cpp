#include "qbek/log.hpp"

#include <cstdlib>
#include <iostream>

namespace qbek::log {
namespace {

Level parse_level(const char* text) {
  if (text == nullptr) return Level::warn;
  std::string s(text);
  if (s == "debug") return Level::debug;
  if (s == "info") return Level::info;
  if (s == "warn" || s == "warning") return Level::warn;
  if (s == "error") return Level::error;
  if (s == "off" || s == "none") return Level::off;
  return Level::warn;
}

Level& current_level() {
  static Level level = parse_level(std::getenv("QBEK_LOG"));
  return level;
}

std::size_t& warn_counter() {
  static std::size_t count = 0;
  return count;
}

// No timestamps: command output must be byte-identical across reruns.
void emit(const char* tag, const std::string& message) {
  std::cerr << "qbek [" << tag << "] " << message << '\n';
}

}  // namespace

Level level() { return current_level(); }

void set_level(Level level) { current_level() = level; }

void debug(const std::string& message) {
  if (current_level() <= Level::debug) emit("debug", message);
}

void info(const std::string& message) {
  if (current_level() <= Level::info) emit("info", message);
}

void warn(const std::string& message) {
  ++warn_counter();
  if (current_level() <= Level::warn) emit("warn", message);
}

void error(const std::string& message) {
  ++warn_counter();
  if (current_level() <= Level::error) emit("error", message);
}

std::size_t warning_count() { return warn_counter(); }

void reset_warning_count() { warn_counter() = 0; }

}  // namespace qbek::log
