// Copyright 2026 The hopcurve Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef HOPCURVE_GEOMETRY_HPP_
#define HOPCURVE_GEOMETRY_HPP_

#include <cmath>

namespace hopcurve {

inline constexpr double kPi = 3.14159265358979323846;

constexpr double deg2rad(double deg) { return deg * kPi / 180.0; }
constexpr double rad2deg(double rad) { return rad * 180.0 / kPi; }

// Planar vector, x forward, z up.
struct Vec2 {
  double x = 0.0;
  double z = 0.0;

  Vec2 operator+(const Vec2& o) const { return {x + o.x, z + o.z}; }
  Vec2 operator-(const Vec2& o) const { return {x - o.x, z - o.z}; }
  Vec2 operator*(double s) const { return {x * s, z * s}; }
  Vec2& operator+=(const Vec2& o) {
    x += o.x;
    z += o.z;
    return *this;
  }
  double dot(const Vec2& o) const { return x * o.x + z * o.z; }
  double norm() const { return std::hypot(x, z); }
};

inline Vec2 operator*(double s, const Vec2& v) { return v * s; }

// 2x2 matrix, row-major: [[a, b], [c, d]].
struct Mat2 {
  double a = 0.0, b = 0.0;
  double c = 0.0, d = 0.0;

  double det() const { return a * d - b * c; }

  Mat2 transpose() const { return {a, c, b, d}; }

  // Caller checks det() != 0.
  Mat2 inverse() const {
    const double inv_det = 1.0 / det();
    return {d * inv_det, -b * inv_det, -c * inv_det, a * inv_det};
  }

  Vec2 operator*(const Vec2& v) const { return {a * v.x + b * v.z, c * v.x + d * v.z}; }
};

}  // namespace hopcurve

#endif  // HOPCURVE_GEOMETRY_HPP_
