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

#include "hopcurve/sim.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "hopcurve/rng.hpp"

namespace hopcurve {

namespace {

constexpr double kEventTimeTol = 1e-6;  // s

bool finite(const SimState& s) {
  return std::isfinite(s.pos.x) && std::isfinite(s.pos.z) && std::isfinite(s.vel.x) &&
         std::isfinite(s.vel.z) && std::isfinite(s.hip_angle) && std::isfinite(s.hip_rate) &&
         std::isfinite(s.ankle_angle) && std::isfinite(s.ankle_rate);
}

struct StanceEval {
  Vec2 acc;
  double grf_z = 0.0;
  double hip_angle = 0.0;
  double hip_rate = 0.0;
  double ankle_angle = 0.0;
  double ankle_rate = 0.0;
};

// Stance dynamics at one body state: joint pose from IK against the pinned
// foot, joint torques from the hip PD and the ankle spring/preload/stop,
// body force through the inverse-transpose Jacobian. The massless leg makes
// the ground reaction equal the leg force on the body.
StanceEval stance_eval(const RobotParams& env, Vec2 pos, Vec2 vel, double contact_x,
                       double ref_angle, double ref_rate) {
  const Vec2 foot{contact_x, env.ground_level};
  const JointAngles q = leg_inverse_kinematics(env, pos, foot);
  const Mat2 jac = stance_jacobian(env, q.hip_angle, q.ankle_angle);
  const Mat2 jac_inv = jac.inverse();
  const Vec2 joint_rates = jac_inv * vel;  // (ankle_rate, hip_rate)

  const double hip_err = ref_angle - q.hip_angle;
  const double hip_err_rate = ref_rate - joint_rates.z;
  // Gearbox drag acts downstream of the motor torque clamp.
  const double tau_hip = std::clamp(env.hip_kp * hip_err + env.hip_kd * hip_err_rate,
                                    -env.hip_torque_max, env.hip_torque_max) -
                         env.hip_gear_friction * joint_rates.z;

  double tau_ankle = env.ankle_stiffness_rot * (env.ankle_rest_angle - q.ankle_angle) +
                     env.ankle_preload_torque;
  const double penetration = q.ankle_angle - env.ankle_rest_angle;
  if (penetration > 0.0) {
    // Unilateral stop: only ever pushes the joint back under the limit.
    tau_ankle += std::min(0.0, -env.hardstop_stiffness * penetration -
                                   env.hardstop_damping * joint_rates.x);
  }

  const Mat2 jac_inv_t = jac_inv.transpose();
  const Vec2 leg_force = jac_inv_t * Vec2{tau_ankle, tau_hip};

  StanceEval out;
  out.acc = leg_force * (1.0 / env.body_mass) + Vec2{0.0, -env.gravity};
  out.grf_z = leg_force.z;
  out.hip_angle = q.hip_angle;
  out.hip_rate = joint_rates.z;
  out.ankle_angle = q.ankle_angle;
  out.ankle_rate = joint_rates.x;
  return out;
}

SimState step_flight(const SimState& state, const RobotParams& env, double hip_reference,
                     double hip_reference_rate, double dt) {
  SimState next = state;
  next.t = state.t + dt;
  next.pos.x = state.pos.x + state.vel.x * dt;
  next.pos.z = state.pos.z + state.vel.z * dt - 0.5 * env.gravity * dt * dt;
  next.vel.z = state.vel.z - env.gravity * dt;

  const double target = hip_reference + hip_reference_rate * dt;
  const double max_delta = env.hip_slew_rate() * dt;
  const double delta = std::clamp(target - state.hip_angle, -max_delta, max_delta);
  next.hip_angle = state.hip_angle + delta;
  next.hip_rate = delta / dt;
  next.ankle_angle = env.ankle_rest_angle;
  next.ankle_rate = 0.0;
  next.grf_z = 0.0;
  return next;
}

SimState step_stance(const SimState& state, const RobotParams& env, double hip_reference,
                     double hip_reference_rate, double dt) {
  const double cx = state.contact_x;
  auto eval = [&](Vec2 pos, Vec2 vel, double h) {
    return stance_eval(env, pos, vel, cx, hip_reference + hip_reference_rate * h,
                       hip_reference_rate);
  };

  const Vec2 p0 = state.pos;
  const Vec2 v0 = state.vel;
  const StanceEval k1 = eval(p0, v0, 0.0);
  const StanceEval k2 = eval(p0 + v0 * (dt / 2), v0 + k1.acc * (dt / 2), dt / 2);
  const Vec2 p2 = p0 + (v0 + k1.acc * (dt / 2)) * (dt / 2);
  const StanceEval k3 = eval(p2, v0 + k2.acc * (dt / 2), dt / 2);
  const Vec2 p3 = p0 + (v0 + k2.acc * (dt / 2)) * dt;
  const StanceEval k4 = eval(p3, v0 + k3.acc * dt, dt);

  // Classic RK4 on (pos, vel).
  SimState next = state;
  next.t = state.t + dt;
  const Vec2 v1 = v0;
  const Vec2 v2 = v0 + k1.acc * (dt / 2);
  const Vec2 v3 = v0 + k2.acc * (dt / 2);
  const Vec2 v4 = v0 + k3.acc * dt;
  next.pos = p0 + (v1 + 2.0 * v2 + 2.0 * v3 + v4) * (dt / 6.0);
  next.vel = v0 + (k1.acc + 2.0 * k2.acc + 2.0 * k3.acc + k4.acc) * (dt / 6.0);

  const StanceEval end = eval(next.pos, next.vel, dt);
  next.hip_angle = end.hip_angle;
  next.hip_rate = end.hip_rate;
  next.ankle_angle = end.ankle_angle;
  next.ankle_rate = end.ankle_rate;
  next.grf_z = end.grf_z;
  return next;
}

double foot_height(const SimState& s, const RobotParams& env) {
  return leg_pose(s, env).foot.z;
}

double knee_height(const SimState& s, const RobotParams& env) {
  return leg_pose(s, env).knee.z;
}

SimState lerp_state(const SimState& a, const SimState& b, double u) {
  auto mix = [u](double x, double y) { return x + (y - x) * u; };
  SimState s = a;
  s.t = mix(a.t, b.t);
  s.pos = {mix(a.pos.x, b.pos.x), mix(a.pos.z, b.pos.z)};
  s.vel = {mix(a.vel.x, b.vel.x), mix(a.vel.z, b.vel.z)};
  s.hip_angle = mix(a.hip_angle, b.hip_angle);
  s.hip_rate = mix(a.hip_rate, b.hip_rate);
  s.ankle_angle = mix(a.ankle_angle, b.ankle_angle);
  s.ankle_rate = mix(a.ankle_rate, b.ankle_rate);
  s.grf_z = mix(a.grf_z, b.grf_z);
  return s;
}

// Bisection on the interpolation parameter for the first state where
// predicate(state) holds; predicate(b) must hold. Refines to kEventTimeTol.
template <typename Pred>
SimState refine_crossing(const SimState& a, const SimState& b, const RobotParams& env,
                         Pred predicate) {
  (void)env;
  double lo = 0.0, hi = 1.0;
  const double span = b.t - a.t;
  if (span <= kEventTimeTol) return b;
  while ((hi - lo) * span > kEventTimeTol) {
    const double mid = 0.5 * (lo + hi);
    if (predicate(lerp_state(a, b, mid))) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return lerp_state(a, b, hi);
}

}  // namespace

std::string to_string(FailureKind kind) {
  switch (kind) {
    case FailureKind::AnkleStrike: return "ankle_strike";
    case FailureKind::BodyGround: return "body_ground";
    case FailureKind::HipRangeExceeded: return "hip_range_exceeded";
    case FailureKind::KinematicError: return "kinematic_error";
    case FailureKind::Diverged: return "diverged";
  }
  return "unknown";
}

void RolloutConfig::validate() const {
  if (!(duration > settle_time) || !(settle_time > 0.0)) {
    throw ParameterError("rollout requires duration > settle_time > 0");
  }
  if (!(dt > 0.0)) throw ParameterError("rollout dt must be > 0");
  if (trajectory_sample_stride < 1) {
    throw ParameterError("trajectory_sample_stride must be >= 1");
  }
}

SimState step(const SimState& state, const RobotParams& env, double hip_reference,
              double hip_reference_rate, double dt) {
  return state.phase == Phase::Flight
             ? step_flight(state, env, hip_reference, hip_reference_rate, dt)
             : step_stance(state, env, hip_reference, hip_reference_rate, dt);
}

LegPose leg_pose(const SimState& state, const RobotParams& env) {
  return forward_kinematics(env, state.pos, state.hip_angle, state.ankle_angle);
}

std::optional<Event> detect_events(const SimState& prev, const SimState& next,
                                   const RobotParams& env) {
  if (!finite(next)) {
    Event ev;
    ev.kind = Event::Kind::Failure;
    ev.failure = FailureKind::Diverged;
    ev.time = next.t;
    ev.state = next;
    return ev;
  }

  std::optional<Event> best;
  auto consider = [&](Event ev) {
    if (!best || ev.time < best->time) best = std::move(ev);
  };

  auto failure_crossing = [&](FailureKind kind, auto predicate) {
    if (!predicate(next) || predicate(prev)) return;
    Event ev;
    ev.kind = Event::Kind::Failure;
    ev.failure = kind;
    ev.state = refine_crossing(prev, next, env, predicate);
    ev.time = ev.state.t;
    consider(std::move(ev));
  };

  failure_crossing(FailureKind::AnkleStrike, [&](const SimState& s) {
    return knee_height(s, env) <= env.ground_level;
  });
  failure_crossing(FailureKind::BodyGround, [&](const SimState& s) {
    return s.pos.z < env.min_body_height;
  });
  failure_crossing(FailureKind::HipRangeExceeded, [&](const SimState& s) {
    return s.hip_angle < env.hip_angle_min || s.hip_angle > env.hip_angle_max;
  });

  if (prev.phase == Phase::Flight) {
    auto touched = [&](const SimState& s) { return foot_height(s, env) <= env.ground_level; };
    if (touched(next) && !touched(prev)) {
      Event ev;
      ev.kind = Event::Kind::Touchdown;
      ev.state = refine_crossing(prev, next, env, touched);
      ev.time = ev.state.t;
      ev.state.phase = Phase::Stance;
      ev.state.contact_x = leg_pose(ev.state, env).foot.x;
      ev.state.grf_z = 0.0;
      consider(std::move(ev));
    }
  } else {
    auto unloaded = [](const SimState& s) { return s.grf_z <= 0.0; };
    if (unloaded(next) && !unloaded(prev)) {
      Event ev;
      ev.kind = Event::Kind::Liftoff;
      ev.state = refine_crossing(prev, next, env, unloaded);
      ev.time = ev.state.t;
      ev.state.phase = Phase::Flight;
      ev.state.ankle_angle = env.ankle_rest_angle;
      ev.state.ankle_rate = 0.0;
      ev.state.grf_z = 0.0;
      consider(std::move(ev));
    }
  }

  return best;
}

SimState initial_state(const PolicyParams& policy, const RobotParams& env) {
  SimState s;
  s.hip_angle = deg2rad(policy.theta0_deg);
  s.ankle_angle = env.ankle_rest_angle;
  const LegPose rest = forward_kinematics(env, Vec2{0.0, 0.0}, s.hip_angle, s.ankle_angle);
  s.pos = {0.0, env.ground_level - rest.foot.z};
  s.phase = Phase::Stance;
  s.contact_x = rest.foot.x;
  return s;
}

RolloutResult rollout(const PolicyParams& policy, const RobotParams& env,
                      const RolloutConfig& cfg) {
  cfg.validate();
  env.validate();

  Rng noise(cfg.seed);
  RolloutResult result;
  SimState state = initial_state(policy, env);
  result.peak_height = state.pos.z;

  bool settled = false;
  double settle_x = 0.0;
  double settle_t = cfg.settle_time;
  long step_index = 0;

  auto record = [&](const SimState& s) {
    if (cfg.record_trajectory) result.trajectory.push_back(s);
  };
  record(state);

  auto note_progress = [&](const SimState& s) {
    result.peak_height = std::max(result.peak_height, s.pos.z);
    if (!settled && s.t >= cfg.settle_time) {
      settled = true;
      settle_x = s.pos.x;
      settle_t = s.t;
    }
  };
  note_progress(state);

  auto finish = [&](const SimState& last, std::optional<FailureKind> failure) {
    if (cfg.record_trajectory &&
        (result.trajectory.empty() || result.trajectory.back().t != last.t)) {
      result.trajectory.push_back(last);
    }
    if (settled && last.t > settle_t) {
      result.displacement = std::abs(last.pos.x - settle_x);
      result.duration = last.t - settle_t;
    }
    result.failure = failure;
    result.reward = (!failure && result.duration > 0.0)
                        ? result.displacement / result.duration
                        : 0.0;
    return result;
  };

  while (state.t < cfg.duration - 1e-12) {
    const double h = std::min(cfg.dt, cfg.duration - state.t);
    // Soft start: the oscillation amplitude ramps in across the settle
    // window, so the standing robot entrains instead of being kicked at
    // full swing from rest. The scored window sees the full reference.
    PolicyParams active = policy;
    if (state.t < cfg.settle_time) {
      active.theta1_deg *= state.t / cfg.settle_time;
    }
    const HipReference ref = hip_reference(active, state.t);
    const double noisy_angle = ref.angle + env.actuation_noise_sigma * noise.normal();

    SimState next;
    try {
      next = step(state, env, noisy_angle, ref.rate, h);
    } catch (const KinematicError&) {
      return finish(state, FailureKind::KinematicError);
    } catch (const SingularityError&) {
      return finish(state, FailureKind::Diverged);
    }

    if (auto event = detect_events(state, next, env)) {
      if (event->kind == Event::Kind::Failure) {
        note_progress(event->state);
        return finish(event->state, event->failure);
      }
      if (event->kind == Event::Kind::Touchdown) ++result.hop_count;
      state = event->state;
      note_progress(state);
      record(state);
      continue;
    }

    state = next;
    note_progress(state);
    ++step_index;
    if (step_index % cfg.trajectory_sample_stride == 0) record(state);
  }

  return finish(state, std::nullopt);
}

std::string to_string(EnvLevel level) {
  switch (level) {
    case EnvLevel::Beginner: return "beginner";
    case EnvLevel::Intermediate: return "intermediate";
    case EnvLevel::Original: return "original";
  }
  return "unknown";
}

EnvLevel env_level_from_string(const std::string& name) {
  if (name == "beginner") return EnvLevel::Beginner;
  if (name == "intermediate") return EnvLevel::Intermediate;
  if (name == "original") return EnvLevel::Original;
  throw ParameterError("unknown environment '" + name +
                       "' (expected beginner|intermediate|original)");
}

RobotParams make_environment(EnvLevel level, const RobotParams& base) {
  RobotParams env = base;
  switch (level) {
    case EnvLevel::Beginner: env.body_mass = 0.415; break;
    case EnvLevel::Intermediate: env.body_mass = 0.505; break;
    case EnvLevel::Original: env.body_mass = 0.600; break;
  }
  return env;
}

void write_trajectory_csv(std::ostream& out, const std::vector<SimState>& trajectory) {
  out << "t,x,z,vx,vz,hip,ankle,phase,contact_force\n";
  char line[256];
  for (const SimState& s : trajectory) {
    std::snprintf(line, sizeof(line), "%.9g,%.9g,%.9g,%.9g,%.9g,%.9g,%.9g,%c,%.9g\n", s.t,
                  s.pos.x, s.pos.z, s.vel.x, s.vel.z, s.hip_angle, s.ankle_angle,
                  s.phase == Phase::Flight ? 'F' : 'S', s.grf_z);
    out << line;
  }
}

}  // namespace hopcurve
