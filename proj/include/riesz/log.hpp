#pragma once

#include <string_view>

namespace riesz {

enum class LogLevel { Quiet = 0, Warn = 1, Info = 2, Debug = 3 };

void set_log_level(LogLevel level) noexcept;
LogLevel log_level() noexcept;

// Writes "[riesz] <level>: msg" to stderr when `level` is enabled.
void log_message(LogLevel level, std::string_view msg);

} // namespace riesz
