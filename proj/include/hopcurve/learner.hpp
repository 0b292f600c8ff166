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

#ifndef HOPCURVE_LEARNER_HPP_
#define HOPCURVE_LEARNER_HPP_

#include <array>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "hopcurve/policy.hpp"
#include "hopcurve/sim.hpp"

namespace hopcurve {

// Reward of one evaluation of a policy; seeded so repeated evaluations are
// reproducible. The simulator-backed version is a rollout; tests substitute
// analytic fields.
using RewardFn = std::function<double(const PolicyParams&, std::uint64_t seed)>;

struct LearnerConfig {
  double perturbation_deg = 1.0;     // finite-difference step, sensible range 0.5-2
  double learning_rate = 2.5;        // deg per (m/s per deg)
  int max_steps = 50;
  int rollouts_per_eval = 1;
  double min_gradient_norm = 1e-4;   // (m/s)/deg, below this the step is a random escape
  double random_step_size_deg = 1.0; // escape step length
  std::uint64_t seed = 0;
  ParameterBox box;

  void validate() const;  // throws ParameterError
};

struct GradientEstimate {
  std::array<double, 2> gradient{};  // (m/s)/deg per axis
  double center_reward = 0.0;        // m/s
  long rollouts_used = 0;            // 4 * rollouts_per_eval + 1
};

struct TraceRecord {
  int step = 0;
  PolicyParams params;               // where the gradient was estimated
  double reward = 0.0;               // center reward at params
  std::array<double, 2> gradient{};
  std::string env_label;
  long rollout_count = 0;            // cumulative, including this step
};

struct LearningTrace {
  std::vector<TraceRecord> records;
  PolicyParams final_params;
  long total_rollouts = 0;
  std::string env_label;
};

// Central differences per axis with perturbed points clipped to the box and
// the divisor taken from the clipped distance. Every evaluation draws a
// distinct seed from eval_seed.
GradientEstimate estimate_gradient(const PolicyParams& p, const RewardFn& reward,
                                   const LearnerConfig& cfg, std::uint64_t eval_seed);
GradientEstimate estimate_gradient(const PolicyParams& p, const RobotParams& env,
                                   const LearnerConfig& cfg, const RolloutConfig& rollout_cfg);

// Gradient-ascent step, or a seeded random unit step of
// random_step_size_deg when the estimate is below min_gradient_norm (so
// plateaus produce meandering rather than a halt). Always clipped to the box.
PolicyParams learn_step(const PolicyParams& p, std::array<double, 2> gradient,
                        const LearnerConfig& cfg, std::uint64_t step_seed);

// Iterates estimate_gradient + learn_step for max_steps or until the center
// reward has changed by less than 1% on each of the last 5 steps (never
// triggered while the reward sits at zero). Deterministic in cfg.seed.
LearningTrace run_learning(const PolicyParams& init, const RewardFn& reward,
                           const LearnerConfig& cfg, const std::string& env_label);
LearningTrace run_learning(const PolicyParams& init, const RobotParams& env,
                           const LearnerConfig& cfg, const RolloutConfig& rollout_cfg,
                           const std::string& env_label);

// The plain-learning stop rule: each of the last 5 steps changed the center
// reward by less than 1% relative to the previous step. A zero previous
// reward never counts, so zero plateaus meander until max_steps.
bool learning_converged(const LearningTrace& trace);

// Engine shared with the curriculum: on_step runs after each recorded step
// and returns true to stop.
using StopHook = std::function<bool(const LearningTrace&)>;
LearningTrace run_learning_engine(const PolicyParams& init, const RewardFn& reward,
                                  const LearnerConfig& cfg, const std::string& env_label,
                                  const StopHook& on_step);

// Simulator-backed reward: one rollout per evaluation.
RewardFn make_rollout_reward(const RobotParams& env, const RolloutConfig& rollout_cfg);

// Header: step,theta0_deg,theta1_deg,reward_mps,grad0,grad1,env,rollouts
void write_trace_csv(std::ostream& out, const LearningTrace& trace);

}  // namespace hopcurve

#endif  // HOPCURVE_LEARNER_HPP_
