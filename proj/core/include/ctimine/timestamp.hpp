#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <string_view>

namespace ctimine {

using Timestamp = std::chrono::sys_time<std::chrono::milliseconds>;

// Accepts "YYYY-MM-DD", "YYYY-MM-DDTHH:MM[:SS[.fff...]]" with an optional "Z"
// or "+HH:MM"/"-HH:MM" offset. Fractions beyond milliseconds are truncated.
std::optional<Timestamp> parse_iso8601(std::string_view text);

// Canonical UTC rendering, e.g. "2021-03-04T05:06:07.000Z".
std::string format_iso8601(Timestamp ts);

}  // namespace ctimine
