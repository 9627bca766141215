#pragma once

#include <array>
#include <charconv>
#include <string>
#include <string_view>
#include <system_error>

#include "graphflow/errors.hpp"

namespace graphflow {

/// Locale-independent decimal text. precision < 0 selects the shortest
/// representation that round-trips.
inline std::string format_double(double value, int precision = -1) {
  std::array<char, 64> buf{};
  const auto res = precision < 0
                       ? std::to_chars(buf.data(), buf.data() + buf.size(), value)
                       : std::to_chars(buf.data(), buf.data() + buf.size(), value,
                                       std::chars_format::general, precision);
  return std::string(buf.data(), res.ptr);
}

inline double parse_double(std::string_view text) {
  double value = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
    throw IoError("cannot parse number '" + std::string(text) + "'");
  }
  return value;
}

}  // namespace graphflow
