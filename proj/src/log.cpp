#include "riesz/log.hpp"

#include <atomic>
#include <iostream>
#include <mutex>

namespace riesz {

namespace {
std::atomic<LogLevel> g_level{LogLevel::Warn};
std::mutex g_mutex;
} // namespace

void set_log_level(LogLevel level) noexcept { g_level.store(level); }

LogLevel log_level() noexcept { return g_level.load(); }

void log_message(LogLevel level, std::string_view msg) {
    if (level == LogLevel::Quiet || static_cast<int>(level) > static_cast<int>(g_level.load())) return;
    static constexpr const char* names[] = {"", "warning", "info", "debug"};
    std::lock_guard lock(g_mutex);
    std::cerr << "[riesz] " << names[static_cast<int>(level)] << ": " << msg << '\n';
}

} // namespace riesz
