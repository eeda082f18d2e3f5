#pragma once

#include <charconv>
#include <string>

namespace fourflow {

// Shortest round-trip decimal form, locale independent, hence byte-stable
// across runs.
inline void append_csv_double(std::string& out, double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  out.append(buf, res.ptr);
}

}  // namespace fourflow
