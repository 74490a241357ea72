#pragma once

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <string>

namespace ozs {

enum class LogLevel : int { error = 0, warn = 1, info = 2, debug = 3 };

// Level comes from OZ_SENTINEL_LOG (error|warn|info|debug), default warn.
inline LogLevel log_level() {
    static LogLevel level = [] {
        const char* env = std::getenv("OZ_SENTINEL_LOG");
        if (!env) return LogLevel::warn;
        if (std::strcmp(env, "error") == 0) return LogLevel::error;
        if (std::strcmp(env, "info") == 0) return LogLevel::info;
        if (std::strcmp(env, "debug") == 0) return LogLevel::debug;
        return LogLevel::warn;
    }();
    return level;
}

inline void log_msg(LogLevel lvl, const std::string& msg) {
    if (int(lvl) > int(log_level())) return;
    static const char* names[] = {"error", "warn", "info", "debug"};
    std::fprintf(stderr, "[%s] %s\n", names[int(lvl)], msg.c_str());
}

inline void log_error(const std::string& m) { log_msg(LogLevel::error, m); }
inline void log_warn(const std::string& m) { log_msg(LogLevel::warn, m); }
inline void log_info(const std::string& m) { log_msg(LogLevel::info, m); }
inline void log_debug(const std::string& m) { log_msg(LogLevel::debug, m); }

} // namespace ozs
