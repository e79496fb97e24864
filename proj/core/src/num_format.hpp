#pragma once

#include <charconv>
#include <string>

namespace domove::detail {

// Shortest decimal form that parses back to the same double; -0 prints as 0.
inline std::string shortest_double(double v) {
  if (v == 0.0) return "0";
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

}  // namespace domove::detail
