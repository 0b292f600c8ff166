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

#ifndef HOPCURVE_POLICY_HPP_
#define HOPCURVE_POLICY_HPP_

#include <string>

#include "hopcurve/geometry.hpp"

namespace hopcurve {

// 9 Hz drive.
inline constexpr double kDefaultOmega = 2.0 * kPi * 9.0;  // rad/s

// Open-loop sinusoidal hip trajectory: theta0 + theta1 * sin(omega * t).
// Parameters live in degrees (the user-facing unit); omega in rad/s.
struct PolicyParams {
  double theta0_deg = 0.0;  // offset
  double theta1_deg = 0.0;  // amplitude
  double omega_rad_s = kDefaultOmega;
};

// Mechanically reachable, non-trivial slice of parameter space.
struct ParameterBox {
  double theta0_min_deg = 0.0;
  double theta0_max_deg = 40.0;
  double theta1_min_deg = 10.0;
  double theta1_max_deg = 45.0;

  void validate() const;
  bool contains(const PolicyParams& p) const {
    return p.theta0_deg >= theta0_min_deg && p.theta0_deg <= theta0_max_deg &&
           p.theta1_deg >= theta1_min_deg && p.theta1_deg <= theta1_max_deg;
  }
  double width() const { return theta0_max_deg - theta0_min_deg; }
  double height() const { return theta1_max_deg - theta1_min_deg; }
  double area() const { return width() * height(); }
};

struct HipReference {
  double angle = 0.0;  // rad
  double rate = 0.0;   // rad/s
};

// Reference angle and rate at time t; degrees convert to radians here, at
// the policy boundary.
HipReference hip_reference(const PolicyParams& p, double t);

// Componentwise clamp of (theta0, theta1); omega passes through.
PolicyParams clip_to_box(PolicyParams p, const ParameterBox& box);

// {"theta0_deg": .., "theta1_deg": .., "omega_rad_s": ..}
std::string policy_to_json_text(const PolicyParams& p);
PolicyParams policy_from_json_text(const std::string& text);

}  // namespace hopcurve

#endif  // HOPCURVE_POLICY_HPP_
