#pragma once

#include <cstdlib>
#include <iostream>
#include <string_view>

// Verbosity comes from ITR_LOG (off | info | debug); default is off.
namespace itr::log {

enum class Level { off = 0, info = 1, debug = 2 };

inline Level level() {
  static const Level current = [] {
    const char* env = std::getenv("ITR_LOG");
    if (env == nullptr) return Level::off;
    const std::string_view v(env);
    if (v == "debug") return Level::debug;
    if (v == "info") return Level::info;
    return Level::off;
  }();
  return current;
}

template <typename... Args>
void write(Level at, const Args&... args) {
  if (level() < at) return;
  std::cerr << (at == Level::debug ? "[debug] " : "[info] ");
  (std::cerr << ... << args) << '\n';
}

template <typename... Args>
void info(const Args&... args) { write(Level::info, args...); }

template <typename... Args>
void debug(const Args&... args) { write(Level::debug, args...); }

}  // namespace itr::log
