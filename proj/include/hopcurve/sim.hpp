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

#ifndef HOPCURVE_SIM_HPP_
#define HOPCURVE_SIM_HPP_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "hopcurve/geometry.hpp"
#include "hopcurve/model.hpp"
#include "hopcurve/policy.hpp"

namespace hopcurve {

enum class Phase { Flight, Stance };

enum class FailureKind {
  AnkleStrike,        // ankle joint (the bend point) reached the ground
  BodyGround,         // body dropped below min_body_height
  HipRangeExceeded,   // hip angle left the mechanical range
  KinematicError,     // stance pose left the leg workspace
  Diverged,           // non-finite state or singular Jacobian
};

std::string to_string(FailureKind kind);

struct SimState {
  double t = 0.0;
  Vec2 pos;                  // body (hip) position, m
  Vec2 vel;                  // m/s
  double hip_angle = 0.0;    // rad
  double hip_rate = 0.0;     // rad/s
  double ankle_angle = 0.0;  // rad, interior angle
  double ankle_rate = 0.0;   // rad/s
  Phase phase = Phase::Flight;
  double contact_x = 0.0;    // m, foot anchor while in stance
  double grf_z = 0.0;        // N, vertical ground reaction at this state (0 in flight)
};

struct RolloutConfig {
  double duration = 5.0;     // s
  double dt = 1e-4;          // s
  double settle_time = 0.5;  // s, excluded from the reward window
  std::uint64_t seed = 0;
  bool record_trajectory = false;
  int trajectory_sample_stride = 10;  // steps between recorded samples

  void validate() const;  // throws ParameterError
};

struct RolloutResult {
  double reward = 0.0;        // m/s, average speed over the scored window; 0 on failure
  std::optional<FailureKind> failure;
  double displacement = 0.0;  // m, |x(end) - x(settle)| over the scored window
  double duration = 0.0;      // s, scored window actually simulated
  int hop_count = 0;          // touchdown events
  double peak_height = 0.0;   // m, max body height
  std::vector<SimState> trajectory;  // only when record_trajectory
};

struct Event {
  enum class Kind { Touchdown, Liftoff, Failure };
  Kind kind = Kind::Touchdown;
  FailureKind failure = FailureKind::Diverged;  // valid when kind == Failure
  double time = 0.0;
  SimState state;  // state at the refined event time, after the phase transition
};

// One fixed step of the hybrid dynamics. Flight: closed-form ballistic body,
// slew-limited kinematic hip tracking, ankle held at the stop. Stance: foot
// pinned at contact_x, joint torques mapped to a body force through the
// inverse-transpose Jacobian, RK4 on the body state. The reference is
// extrapolated linearly across the step. No event handling here. Throws
// KinematicError/SingularityError when the stance pose leaves the workspace.
SimState step(const SimState& state, const RobotParams& env, double hip_reference,
              double hip_reference_rate, double dt);

// Scans the step from prev to next for the earliest event, refining its time
// to 1e-6 s by bisection on linearly interpolated states. The returned state
// has the phase transition applied (touchdown pins the foot, liftoff frees
// it). Failures are values, never faults.
std::optional<Event> detect_events(const SimState& prev, const SimState& next,
                                   const RobotParams& env);

// Body standing at rest height on the foot with the hip at theta0.
SimState initial_state(const PolicyParams& policy, const RobotParams& env);

// Foot and ankle-joint positions implied by a state.
LegPose leg_pose(const SimState& state, const RobotParams& env);

// Fixed-duration episode; reward is the average forward speed over the
// scored window, zero if any failure occurred. Deterministic in
// (policy, env, cfg.seed).
RolloutResult rollout(const PolicyParams& policy, const RobotParams& env,
                      const RolloutConfig& cfg);

enum class EnvLevel { Beginner, Intermediate, Original };

std::string to_string(EnvLevel level);
EnvLevel env_level_from_string(const std::string& name);  // throws ParameterError

// Returns base with body_mass set to 415 g, 505 g or 600 g.
RobotParams make_environment(EnvLevel level, const RobotParams& base);

// Header: t,x,z,vx,vz,hip,ankle,phase,contact_force  (SI units, phase F/S)
void write_trajectory_csv(std::ostream& out, const std::vector<SimState>& trajectory);

}  // namespace hopcurve

#endif  // HOPCURVE_SIM_HPP_
