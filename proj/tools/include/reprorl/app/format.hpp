#pragma once

#include <charconv>
#include <cmath>
#include <string>

namespace reprorl::app {

// Shortest text that reads back to the same double ("0.1", "60", "-2.5e-07").
inline std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

}  // namespace reprorl::app
