#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace triage {

// Strict "YYYY-MM-DDTHH:MM:SSZ" (UTC, whole seconds). Returns nullopt on
// any deviation, including out-of-range calendar fields.
std::optional<std::int64_t> parse_iso8601_utc(std::string_view text);

std::string format_iso8601_utc(std::int64_t epoch_seconds);

}  // namespace triage
