#pragma once

// Internal number formatting helpers. Not installed.

#include <charconv>
#include <string>

namespace kppdr::detail {

// Shortest representation that round-trips the exact double value.
inline std::string full_precision(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  (void)ec;
  return std::string(buf, ptr);
}

}  // namespace kppdr::detail
