#pragma once
// Deterministic CSV formatting: 6 significant digits for doubles, plain
// decimal for integers, LF line endings.

#include <cmath>
#include <cstdio>
#include <string>

namespace subthz {

inline std::string fmt_g6(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

}  // namespace subthz
