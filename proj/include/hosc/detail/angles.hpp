#pragma once

#include <cmath>
#include <numbers>

namespace hosc::detail {

/// Continuous, monotone branch of arctan(ratio * tan(u)) for ratio > 0.
/// Agrees with u at every multiple of pi/2.
inline double continued_arctan(double ratio, double u) {
  const double m = std::round(u / std::numbers::pi);
  const double r = u - m * std::numbers::pi;
  return m * std::numbers::pi + std::atan2(ratio * std::sin(r), std::cos(r));
}

}  // namespace hosc::detail
