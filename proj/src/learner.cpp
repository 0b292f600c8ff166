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

#include "hopcurve/learner.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

#include "hopcurve/rng.hpp"

namespace hopcurve {

namespace {

// Stream indices for the evaluations of one learning step.
enum EvalStream : std::uint64_t {
  kCenter = 0,
  kTheta0Plus = 1,
  kTheta0Minus = 2,
  kTheta1Plus = 3,
  kTheta1Minus = 4,
  kEscapeDirection = 0xE5CA,
};

}  // namespace

void LearnerConfig::validate() const {
  if (!(perturbation_deg > 0.0)) throw ParameterError("perturbation must be > 0");
  if (!(learning_rate > 0.0)) throw ParameterError("learning_rate must be > 0");
  if (max_steps < 1) throw ParameterError("max_steps must be >= 1");
  if (rollouts_per_eval < 1) throw ParameterError("rollouts_per_eval must be >= 1");
  if (!(min_gradient_norm >= 0.0)) throw ParameterError("min_gradient_norm must be >= 0");
  if (!(random_step_size_deg > 0.0)) throw ParameterError("random_step_size must be > 0");
  box.validate();
}

GradientEstimate estimate_gradient(const PolicyParams& p, const RewardFn& reward,
                                   const LearnerConfig& cfg, std::uint64_t eval_seed) {
  const double delta = cfg.perturbation_deg;

  auto averaged = [&](const PolicyParams& q, std::uint64_t stream) {
    double sum = 0.0;
    for (int rep = 0; rep < cfg.rollouts_per_eval; ++rep) {
      sum += reward(q, mix_seed(eval_seed, stream, static_cast<std::uint64_t>(rep)));
    }
    return sum / cfg.rollouts_per_eval;
  };

  GradientEstimate est;
  est.center_reward = reward(p, mix_seed(eval_seed, kCenter, 0));
  est.rollouts_used = 1;

  struct Axis {
    double PolicyParams::* member;
    EvalStream plus, minus;
  };
  const Axis axes[2] = {{&PolicyParams::theta0_deg, kTheta0Plus, kTheta0Minus},
                        {&PolicyParams::theta1_deg, kTheta1Plus, kTheta1Minus}};
  for (int axis = 0; axis < 2; ++axis) {
    PolicyParams plus = p;
    plus.*(axes[axis].member) += delta;
    plus = clip_to_box(plus, cfg.box);
    PolicyParams minus = p;
    minus.*(axes[axis].member) -= delta;
    minus = clip_to_box(minus, cfg.box);

    const double span = plus.*(axes[axis].member) - minus.*(axes[axis].member);
    const double r_plus = averaged(plus, axes[axis].plus);
    const double r_minus = averaged(minus, axes[axis].minus);
    est.rollouts_used += 2 * cfg.rollouts_per_eval;
    est.gradient[axis] = span > 0.0 ? (r_plus - r_minus) / span : 0.0;
  }
  return est;
}

GradientEstimate estimate_gradient(const PolicyParams& p, const RobotParams& env,
                                   const LearnerConfig& cfg, const RolloutConfig& rollout_cfg) {
  return estimate_gradient(p, make_rollout_reward(env, rollout_cfg), cfg,
                           mix_seed(cfg.seed, rollout_cfg.seed));
}

PolicyParams learn_step(const PolicyParams& p, std::array<double, 2> gradient,
                        const LearnerConfig& cfg, std::uint64_t step_seed) {
  PolicyParams next = p;
  const double norm = std::hypot(gradient[0], gradient[1]);
  if (norm >= cfg.min_gradient_norm && norm > 0.0) {
    next.theta0_deg += cfg.learning_rate * gradient[0];
    next.theta1_deg += cfg.learning_rate * gradient[1];
  } else {
    Rng rng(mix_seed(step_seed, kEscapeDirection));
    const double angle = rng.uniform(0.0, 2.0 * kPi);
    next.theta0_deg += cfg.random_step_size_deg * std::cos(angle);
    next.theta1_deg += cfg.random_step_size_deg * std::sin(angle);
  }
  return clip_to_box(next, cfg.box);
}

LearningTrace run_learning_engine(const PolicyParams& init, const RewardFn& reward,
                                  const LearnerConfig& cfg, const std::string& env_label,
                                  const StopHook& on_step) {
  cfg.validate();
  if (!cfg.box.contains(init)) {
    throw ParameterError("initial policy outside the parameter box");
  }

  LearningTrace trace;
  trace.env_label = env_label;
  PolicyParams p = clip_to_box(init, cfg.box);
  for (int step = 0; step < cfg.max_steps; ++step) {
    const std::uint64_t step_seed = mix_seed(cfg.seed, static_cast<std::uint64_t>(step));
    const GradientEstimate est = estimate_gradient(p, reward, cfg, step_seed);
    trace.total_rollouts += est.rollouts_used;

    TraceRecord rec;
    rec.step = step;
    rec.params = p;
    rec.reward = est.center_reward;
    rec.gradient = est.gradient;
    rec.env_label = env_label;
    rec.rollout_count = trace.total_rollouts;
    trace.records.push_back(rec);

    p = learn_step(p, est.gradient, cfg, step_seed);
    trace.final_params = p;
    if (on_step && on_step(trace)) break;
  }
  return trace;
}

bool learning_converged(const LearningTrace& trace) {
  constexpr int kWindow = 5;
  constexpr double kRelTol = 0.01;
  const auto& recs = trace.records;
  if (recs.size() < kWindow + 1) return false;
  for (std::size_t k = recs.size() - kWindow; k < recs.size(); ++k) {
    const double prev = recs[k - 1].reward;
    const double change = std::abs(recs[k].reward - prev);
    if (!(change < kRelTol * std::abs(prev))) return false;
  }
  return true;
}

LearningTrace run_learning(const PolicyParams& init, const RewardFn& reward,
                           const LearnerConfig& cfg, const std::string& env_label) {
  return run_learning_engine(init, reward, cfg, env_label, learning_converged);
}

LearningTrace run_learning(const PolicyParams& init, const RobotParams& env,
                           const LearnerConfig& cfg, const RolloutConfig& rollout_cfg,
                           const std::string& env_label) {
  LearnerConfig effective = cfg;
  effective.seed = mix_seed(cfg.seed, rollout_cfg.seed);
  return run_learning(init, make_rollout_reward(env, rollout_cfg), effective, env_label);
}

RewardFn make_rollout_reward(const RobotParams& env, const RolloutConfig& rollout_cfg) {
  return [env, rollout_cfg](const PolicyParams& p, std::uint64_t seed) {
    RolloutConfig cfg = rollout_cfg;
    cfg.seed = seed;
    cfg.record_trajectory = false;
    return rollout(p, env, cfg).reward;
  };
}

void write_trace_csv(std::ostream& out, const LearningTrace& trace) {
  out << "step,theta0_deg,theta1_deg,reward_mps,grad0,grad1,env,rollouts\n";
  char line[256];
  for (const TraceRecord& rec : trace.records) {
    std::snprintf(line, sizeof(line), "%d,%.9g,%.9g,%.9g,%.9g,%.9g,%s,%ld\n", rec.step,
                  rec.params.theta0_deg, rec.params.theta1_deg, rec.reward, rec.gradient[0],
                  rec.gradient[1], rec.env_label.c_str(), rec.rollout_count);
    out << line;
  }
}

}  // namespace hopcurve
