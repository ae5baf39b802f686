#pragma once

#include <cstdio>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace latticeopt::detail {

/// Fixed-point formatting with a '.' decimal separator regardless of the
/// process locale.
inline std::string format_fixed(double value, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", decimals, value);
  std::string out(buf);
  for (char& c : out) {
    if (c == ',') c = '.';
  }
  return out;
}

/// Up-to-N-decimals formatting: trailing zeros (and a bare trailing dot)
/// are trimmed, matching the "score: 66.6" style.
inline std::string format_trimmed(double value, int max_decimals) {
  std::string out = format_fixed(value, max_decimals);
  if (out.find('.') == std::string::npos) return out;
  while (!out.empty() && out.back() == '0') out.pop_back();
  if (!out.empty() && out.back() == '.') out.pop_back();
  return out;
}

inline std::string_view trim(std::string_view s) {
  const char* ws = " \t\r\n";
  auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

inline std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    auto pos = s.find(sep, start);
    if (pos == std::string_view::npos) {
      out.push_back(s.substr(start));
      break;
    }
    out.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
  return out;
}

/// Parses a full token as a double; rejects partial matches and empties.
inline std::optional<double> try_parse_double(std::string_view token) {
  std::string t{trim(token)};
  if (t.empty()) return std::nullopt;
  char* end = nullptr;
  double v = std::strtod(t.c_str(), &end);
  if (end != t.c_str() + t.size()) return std::nullopt;
  return v;
}

}  // namespace latticeopt::detail
