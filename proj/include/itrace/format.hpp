#pragma once

#include <cmath>

#include <nlohmann/json.hpp>

#include "itrace/geometry.hpp"

namespace itrace {

using Json = nlohmann::ordered_json;

// Numbers written to documents and logs are rounded to 1e-6 so the
// bytes do not depend on last-bit floating point differences between builds.
inline double normalized(double x) {
  if (!std::isfinite(x)) return x;
  const double r = std::round(x * 1e6) / 1e6;
  return r == 0.0 ? 0.0 : r;
}

inline Json point_json(Vec2 p) { return Json::array({normalized(p.x), normalized(p.y)}); }

}  // namespace itrace
