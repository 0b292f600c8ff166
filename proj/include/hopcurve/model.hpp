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

#ifndef HOPCURVE_MODEL_HPP_
#define HOPCURVE_MODEL_HPP_

#include <iosfwd>
#include <stdexcept>
#include <string>

#include "hopcurve/geometry.hpp"

namespace hopcurve {

class ParameterError : public std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Requested foot position is outside the leg workspace.
class KinematicError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Straight-leg configuration; the stance Jacobian is not invertible.
class SingularityError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Physical constants of the hopper. The body is a planar point mass at the
// hip (the boom suppresses pitch and its counterweight offsets its own
// mass). SI units throughout, angles in radians.
struct RobotParams {
  double body_mass = 0.600;          // kg, full payload
  double gravity = 9.81;             // m/s^2
  double upper_len = 0.110;          // m, hip to ankle joint
  double lower_len = 0.136;          // m, ankle joint to foot
  double ankle_rest_angle = deg2rad(130.0);  // rad, interior angle; also the hard-stop angle
  double ankle_stiffness_rot = 1.35;         // N*m/rad, 6 kN/m linear spring on a 15 mm cam
  double ankle_preload_torque = 0.05;        // N*m, holds the joint against the stop at rest
  double hardstop_stiffness = 50.0;  // N*m/rad, penalty on extension past the stop
  double hardstop_damping = 1.5;     // N*m*s/rad
  double hip_kp = 18.0;              // N*m/rad
  double hip_kd = 0.04;              // N*m*s/rad
  double hip_torque_max = 2.5;       // N*m
  double hip_gear_friction = 0.08;   // N*m*s/rad, viscous drag of the geared drive
  double hip_angle_min = deg2rad(-60.0);  // rad, mechanical range
  double hip_angle_max = deg2rad(100.0);  // rad
  double ground_level = 0.0;         // m
  double min_body_height = 0.05;     // m, below this the body has struck the ground
  double boom_radius = 1.5;          // m, pivot to leg; only documents the speed convention
  double actuation_noise_sigma = deg2rad(0.25);  // rad, per-step noise on the hip reference

  static RobotParams defaults() { return RobotParams{}; }

  // Throws ParameterError if any invariant is violated.
  void validate() const;

  // Hip-to-foot distance at the rest pose (law of cosines at the ankle).
  double rest_leg_length() const;

  // Flight-phase tracking rate limit implied by the torque budget: the rate
  // at which the PD damping term alone saturates the motor.
  double hip_slew_rate() const { return hip_torque_max / hip_kd; }
};

// Rotational stiffness of a linear spring acting through a cam: k * r^2.
// Throws ParameterError on non-positive inputs.
double ankle_rotational_stiffness(double linear_stiffness, double cam_radius);

struct LegPose {
  Vec2 knee;  // ankle-joint location (the bend point between the segments)
  Vec2 foot;
};

struct JointAngles {
  double hip_angle = 0.0;    // rad, virtual leg (hip->foot) from body-down vertical,
                             // positive forward
  double ankle_angle = 0.0;  // rad, interior angle between the segments
};

// The hip angle steers the virtual leg: the foot sits at the rest-law leg
// length r(ankle_angle) along the hip-angle direction, and the knee bend
// points backward (the upper segment trails the virtual leg). At a straight
// leg (180 deg ankle) knee and foot are collinear below the hip.
LegPose forward_kinematics(const RobotParams& p, Vec2 body, double hip_angle,
                           double ankle_angle);

// Hip-to-foot distance for an interior ankle angle (law of cosines).
double virtual_leg_length(const RobotParams& p, double ankle_angle);

// Single backward-bend branch. Throws KinematicError when |foot - body| is
// outside (|upper - lower|, upper + lower).
JointAngles leg_inverse_kinematics(const RobotParams& p, Vec2 body, Vec2 foot);

// d(body position)/d(ankle_angle, hip_angle) with the foot pinned; columns
// ordered (ankle, hip), rows (x, z). Throws SingularityError when
// |det| < 1e-9 (straight leg).
Mat2 stance_jacobian(const RobotParams& p, double hip_angle, double ankle_angle);

// JSON I/O for the shipped parameter document (robot_default.json). Unknown
// keys are rejected; absent keys keep their defaults.
RobotParams robot_params_from_json_text(const std::string& text);
std::string robot_params_to_json_text(const RobotParams& p);
RobotParams load_robot_params(const std::string& path);

}  // namespace hopcurve

#endif  // HOPCURVE_MODEL_HPP_
