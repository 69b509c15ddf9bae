#pragma once

#include <cmath>
#include <numbers>

namespace logblock {

inline constexpr double two_pi = 2.0 * std::numbers::pi;

// Wrap an angle to [0, 2*pi).
inline double wrap_two_pi(double a) {
  double x = std::fmod(a, two_pi);
  if (x < 0.0) x += two_pi;
  if (x >= two_pi) x = 0.0;  // rounding of fmod remainders just below 2*pi
  return x;
}

// Wrap an angle to [-pi, pi).
inline double wrap_pi(double a) {
  double x = std::fmod(a + std::numbers::pi, two_pi);
  if (x < 0.0) x += two_pi;
  return x - std::numbers::pi;
}

// Smallest absolute separation between two angles.
inline double angle_dist(double a, double b) { return std::fabs(wrap_pi(a - b)); }

}  // namespace logblock
