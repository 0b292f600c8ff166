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

#include "hopcurve/model.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace hopcurve {

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw ParameterError(what);
}

double clamped_acos(double c) { return std::acos(std::clamp(c, -1.0, 1.0)); }

}  // namespace

void RobotParams::validate() const {
  require(body_mass > 0.0, "body_mass must be > 0");
  require(gravity > 0.0, "gravity must be > 0");
  require(upper_len > 0.0, "upper_len must be > 0");
  require(lower_len > 0.0, "lower_len must be > 0");
  require(ankle_rest_angle > 0.0 && ankle_rest_angle < kPi,
          "ankle_rest_angle must be in (0, pi)");
  require(ankle_stiffness_rot > 0.0, "ankle_stiffness_rot must be > 0");
  require(ankle_preload_torque >= 0.0, "ankle_preload_torque must be >= 0");
  require(hardstop_stiffness > 0.0, "hardstop_stiffness must be > 0");
  require(hardstop_damping >= 0.0, "hardstop_damping must be >= 0");
  require(hip_kp >= 0.0, "hip_kp must be >= 0");
  require(hip_kd > 0.0, "hip_kd must be > 0");
  require(hip_torque_max > 0.0, "hip_torque_max must be > 0");
  require(hip_gear_friction >= 0.0, "hip_gear_friction must be >= 0");
  require(hip_angle_min < hip_angle_max, "hip_angle_min must be < hip_angle_max");
  require(min_body_height > ground_level, "min_body_height must be above ground_level");
  require(boom_radius > 0.0, "boom_radius must be > 0");
  require(actuation_noise_sigma >= 0.0, "actuation_noise_sigma must be >= 0");
}

double RobotParams::rest_leg_length() const {
  return virtual_leg_length(*this, ankle_rest_angle);
}

double ankle_rotational_stiffness(double linear_stiffness, double cam_radius) {
  if (linear_stiffness <= 0.0 || cam_radius <= 0.0) {
    throw ParameterError("ankle_rotational_stiffness requires positive stiffness and cam radius");
  }
  return linear_stiffness * cam_radius * cam_radius;
}

double virtual_leg_length(const RobotParams& p, double ankle_angle) {
  const double u = p.upper_len;
  const double l = p.lower_len;
  return std::sqrt(u * u + l * l - 2.0 * u * l * std::cos(ankle_angle));
}

LegPose forward_kinematics(const RobotParams& p, Vec2 body, double hip_angle,
                           double ankle_angle) {
  const double u = p.upper_len;
  const double l = p.lower_len;
  const double r = virtual_leg_length(p, ankle_angle);
  // Angle at the hip between the virtual leg and the upper segment.
  const double hip_gap = clamped_acos((u * u + r * r - l * l) / (2.0 * u * r));
  const double upper_heading = hip_angle - hip_gap;  // knee trails the virtual leg
  LegPose pose;
  pose.knee = body + u * Vec2{std::sin(upper_heading), -std::cos(upper_heading)};
  pose.foot = body + r * Vec2{std::sin(hip_angle), -std::cos(hip_angle)};
  return pose;
}

JointAngles leg_inverse_kinematics(const RobotParams& p, Vec2 body, Vec2 foot) {
  const Vec2 d = foot - body;
  const double r = d.norm();
  const double u = p.upper_len;
  const double l = p.lower_len;
  constexpr double kEps = 1e-12;
  if (!(r > std::abs(u - l) + kEps) || !(r < u + l - kEps)) {
    std::ostringstream msg;
    msg << "foot distance " << r << " outside leg workspace (" << std::abs(u - l)
        << ", " << u + l << ")";
    throw KinematicError(msg.str());
  }
  JointAngles q;
  q.ankle_angle = clamped_acos((u * u + l * l - r * r) / (2.0 * u * l));
  q.hip_angle = std::atan2(d.x, -d.z);  // virtual-leg direction from body-down vertical
  return q;
}

Mat2 stance_jacobian(const RobotParams& p, double hip_angle, double ankle_angle) {
  // body = foot - r(ankle) * (sin hip, -cos hip) with the foot pinned.
  const double r = virtual_leg_length(p, ankle_angle);
  const double dr = p.upper_len * p.lower_len * std::sin(ankle_angle) / r;
  const double s = std::sin(hip_angle);
  const double c = std::cos(hip_angle);
  const Mat2 jac{-dr * s, -r * c, dr * c, -r * s};  // det = r * dr
  if (std::abs(jac.det()) < 1e-9) {
    throw SingularityError("stance Jacobian is singular (straight leg)");
  }
  return jac;
}

namespace {

using nlohmann::json;

struct FieldBinding {
  const char* key;
  double RobotParams::* member;
};

// JSON keys carry their SI unit as a suffix.
constexpr FieldBinding kFields[] = {
    {"body_mass_kg", &RobotParams::body_mass},
    {"gravity_mps2", &RobotParams::gravity},
    {"upper_len_m", &RobotParams::upper_len},
    {"lower_len_m", &RobotParams::lower_len},
    {"ankle_rest_angle_rad", &RobotParams::ankle_rest_angle},
    {"ankle_stiffness_rot_nm_per_rad", &RobotParams::ankle_stiffness_rot},
    {"ankle_preload_torque_nm", &RobotParams::ankle_preload_torque},
    {"hardstop_stiffness_nm_per_rad", &RobotParams::hardstop_stiffness},
    {"hardstop_damping_nms_per_rad", &RobotParams::hardstop_damping},
    {"hip_kp_nm_per_rad", &RobotParams::hip_kp},
    {"hip_kd_nms_per_rad", &RobotParams::hip_kd},
    {"hip_torque_max_nm", &RobotParams::hip_torque_max},
    {"hip_gear_friction_nms_per_rad", &RobotParams::hip_gear_friction},
    {"hip_angle_min_rad", &RobotParams::hip_angle_min},
    {"hip_angle_max_rad", &RobotParams::hip_angle_max},
    {"ground_level_m", &RobotParams::ground_level},
    {"min_body_height_m", &RobotParams::min_body_height},
    {"boom_radius_m", &RobotParams::boom_radius},
    {"actuation_noise_sigma_rad", &RobotParams::actuation_noise_sigma},
};

}  // namespace

RobotParams robot_params_from_json_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParameterError(std::string("robot parameters: ") + e.what());
  }
  if (!doc.is_object()) throw ParameterError("robot parameters must be a JSON object");
  RobotParams p;
  for (const auto& [key, value] : doc.items()) {
    bool known = false;
    for (const auto& field : kFields) {
      if (key == field.key) {
        if (!value.is_number()) {
          throw ParameterError("robot parameter '" + key + "' must be a number");
        }
        p.*(field.member) = value.get<double>();
        known = true;
        break;
      }
    }
    if (!known) throw ParameterError("unknown robot parameter '" + key + "'");
  }
  p.validate();
  return p;
}

std::string robot_params_to_json_text(const RobotParams& p) {
  json doc = json::object();
  for (const auto& field : kFields) doc[field.key] = p.*(field.member);
  return doc.dump(2) + "\n";
}

RobotParams load_robot_params(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParameterError("cannot open robot parameter file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return robot_params_from_json_text(buf.str());
}

}  // namespace hopcurve
