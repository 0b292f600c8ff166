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

#include "hopcurve/curriculum.hpp"

#include <cmath>

#include <json.hpp>

#include "hopcurve/rng.hpp"

namespace hopcurve {

namespace {

constexpr std::uint64_t kProbeStream = 0xB0BE;

// Reference speed for relative-improvement comparisons near zero reward.
constexpr double kRewardFloor = 0.01;  // m/s

bool stalled(const LearningTrace& trace, int window, double tolerance) {
  const auto& recs = trace.records;
  if (recs.size() < static_cast<std::size_t>(window) + 1) return false;
  const double start = recs[recs.size() - 1 - window].reward;
  const double end = recs.back().reward;
  const double improvement = (end - start) / std::max(std::abs(start), kRewardFloor);
  return improvement < tolerance;
}

}  // namespace

void CurriculumSpec::validate() const {
  if (environments.empty()) throw ParameterError("curriculum requires at least one environment");
  if (learner_configs.size() != 1 && learner_configs.size() != environments.size()) {
    throw ParameterError("curriculum needs one learner config, or one per environment");
  }
  if (stall_window < 1) throw ParameterError("stall_window must be >= 1");
  if (max_steps_per_env < 1) throw ParameterError("max_steps_per_env must be >= 1");
  for (const LearnerConfig& cfg : learner_configs) cfg.validate();
}

const LearnerConfig& CurriculumSpec::config_for(std::size_t env_index) const {
  return learner_configs.size() == 1 ? learner_configs.front()
                                     : learner_configs.at(env_index);
}

void PolicyMemory::update(const std::string& env_label, const PolicyParams& p,
                          double reward) {
  auto it = best.find(env_label);
  if (it == best.end() || reward > it->second.reward) {
    best[env_label] = Entry{p, reward};
  }
}

const PolicyMemory::Entry* PolicyMemory::lookup(const std::string& env_label) const {
  auto it = best.find(env_label);
  return it == best.end() ? nullptr : &it->second;
}

bool should_switch(const LearningTrace& trace, const RobotParams& next_env,
                   const CurriculumSpec& spec, std::size_t next_env_index,
                   const RolloutConfig& rollout_cfg, long* probe_rollouts_used) {
  if (probe_rollouts_used) *probe_rollouts_used = 0;
  if (trace.records.empty()) throw ParameterError("should_switch requires a non-empty trace");

  const bool budget_done =
      trace.records.size() >= static_cast<std::size_t>(spec.max_steps_per_env);
  if (!stalled(trace, spec.stall_window, spec.stall_tolerance) && !budget_done) {
    return false;
  }
  if (!spec.probe_next) return true;

  const LearnerConfig& next_cfg = spec.config_for(next_env_index);
  const std::uint64_t probe_seed =
      mix_seed(mix_seed(next_cfg.seed, rollout_cfg.seed), kProbeStream,
               trace.records.size());
  const GradientEstimate probe = estimate_gradient(
      trace.final_params, make_rollout_reward(next_env, rollout_cfg), next_cfg, probe_seed);
  if (probe_rollouts_used) *probe_rollouts_used = probe.rollouts_used;
  return std::hypot(probe.gradient[0], probe.gradient[1]) >= next_cfg.min_gradient_norm;
}

CurriculumResult run_curriculum(const PolicyParams& init, const CurriculumSpec& spec,
                                const RolloutConfig& rollout_cfg, const RobotParams& base) {
  spec.validate();
  rollout_cfg.validate();

  CurriculumResult result;
  PolicyParams params = init;

  for (std::size_t idx = 0; idx < spec.environments.size(); ++idx) {
    const EnvLevel level = spec.environments[idx];
    const RobotParams env = make_environment(level, base);
    const std::string label = to_string(level);
    const LearnerConfig& cfg = spec.config_for(idx);
    const bool last_env = idx + 1 == spec.environments.size();

    // Switch-back: an environment listed again restores its memorized best
    // before any new step.
    if (const PolicyMemory::Entry* entry = result.memory.lookup(label)) {
      params = entry->params;
    }

    long probe_rollouts_this_env = 0;
    LearningTrace trace;
    if (last_env) {
      // Plain learning stop rule (so a single-environment curriculum
      // reproduces run_learning exactly), with memory updates bolted on.
      LearnerConfig effective = cfg;
      effective.seed = mix_seed(cfg.seed, rollout_cfg.seed);
      const RewardFn reward = make_rollout_reward(env, rollout_cfg);
      trace = run_learning_engine(
          params, reward, effective, label, [&](const LearningTrace& t) {
            result.memory.update(label, t.records.back().params, t.records.back().reward);
            return learning_converged(t);
          });
    } else {
      const RobotParams next_env = make_environment(spec.environments[idx + 1], base);
      LearnerConfig effective = cfg;
      effective.seed = mix_seed(cfg.seed, rollout_cfg.seed);
      // Hard cap so a persistently failing probe cannot pin the curriculum
      // in one environment forever.
      effective.max_steps = 2 * spec.max_steps_per_env;
      const RewardFn reward = make_rollout_reward(env, rollout_cfg);
      trace = run_learning_engine(
          params, reward, effective, label, [&](const LearningTrace& t) {
            result.memory.update(label, t.records.back().params, t.records.back().reward);
            long probe_rollouts = 0;
            const bool advance =
                should_switch(t, next_env, spec, idx + 1, rollout_cfg, &probe_rollouts);
            probe_rollouts_this_env += probe_rollouts;
            return advance;
          });
    }

    result.probe_rollouts += probe_rollouts_this_env;
    result.total_rollouts += trace.total_rollouts + probe_rollouts_this_env;
    params = trace.final_params;
    result.traces.push_back(std::move(trace));
  }

  result.final_params = params;
  return result;
}

CriteriaReport criteria_report(const std::vector<LandscapeGrid>& landscapes,
                               double threshold) {
  if (landscapes.size() < 2) {
    throw ParameterError("criteria report needs at least two landscapes");
  }
  const auto& ref = landscapes.front();
  for (const LandscapeGrid& grid : landscapes) {
    if (grid.theta0_values != ref.theta0_values || grid.theta1_values != ref.theta1_values) {
      throw ParameterError("criteria report requires landscapes over the same box");
    }
  }

  CriteriaReport report;
  report.threshold = threshold;
  for (const LandscapeGrid& grid : landscapes) {
    report.summaries.push_back(extract_sgs(grid, threshold));
    report.area_fractions.push_back(report.summaries.back().area_fraction);
  }
  for (std::size_t k = 0; k + 1 < report.summaries.size(); ++k) {
    report.funnels.push_back(funnel_check(report.summaries[k], report.summaries[k + 1]));
  }
  report.ordering_satisfied = true;
  for (std::size_t k = 0; k + 1 < report.area_fractions.size(); ++k) {
    if (!(report.area_fractions[k] > report.area_fractions[k + 1])) {
      report.ordering_satisfied = false;
    }
  }
  return report;
}

namespace {

nlohmann::json sgs_json(const SgsSummary& s) {
  nlohmann::json doc;
  doc["env"] = s.env_label;
  doc["threshold"] = s.threshold;
  doc["area_fraction"] = s.area_fraction;
  doc["peak"] = {s.peak_params[0], s.peak_params[1]};
  doc["peak_reward"] = s.peak_reward;
  doc["components"] = s.connected_components;
  auto boundary = nlohmann::json::array();
  for (const Polygon& poly : s.boundary) {
    auto jp = nlohmann::json::array();
    for (const auto& pt : poly) jp.push_back({pt[0], pt[1]});
    boundary.push_back(jp);
  }
  doc["boundary"] = boundary;
  return doc;
}

}  // namespace

std::string criteria_report_to_json_text(const CriteriaReport& report) {
  nlohmann::json doc;
  doc["threshold"] = report.threshold;
  auto envs = nlohmann::json::array();
  for (const SgsSummary& s : report.summaries) envs.push_back(sgs_json(s));
  doc["environments"] = envs;
  auto funnels = nlohmann::json::array();
  for (const FunnelReport& f : report.funnels) {
    nlohmann::json jf;
    jf["source"] = f.source_env;
    jf["target"] = f.target_env;
    jf["peak_contained"] = f.peak_contained;
    if (std::isfinite(f.margin_deg)) {
      jf["margin_deg"] = f.margin_deg;
    } else {
      jf["margin_deg"] = nullptr;  // empty target set
    }
    funnels.push_back(jf);
  }
  doc["funnels"] = funnels;
  doc["area_fraction_ordering"] = {
      {"observed", report.area_fractions},
      {"satisfied", report.ordering_satisfied},
  };
  // Fractions measured on the physical platform, for side-by-side reading.
  doc["reference_area_fractions"] = {
      {"beginner", 0.46}, {"intermediate", 0.25}, {"original", 0.20}};
  return doc.dump(2) + "\n";
}

std::string memory_to_json_text(const PolicyMemory& memory) {
  nlohmann::json doc = nlohmann::json::object();
  for (const auto& [label, entry] : memory.best) {
    doc[label] = {{"theta0_deg", entry.params.theta0_deg},
                  {"theta1_deg", entry.params.theta1_deg},
                  {"omega_rad_s", entry.params.omega_rad_s},
                  {"reward_mps", entry.reward}};
  }
  return doc.dump(2) + "\n";
}

}  // namespace hopcurve
