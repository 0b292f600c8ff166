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

#include <cmath>

#include <doctest.h>

#include "hopcurve/curriculum.hpp"

using namespace hopcurve;

namespace {

RolloutConfig quick_rollouts(std::uint64_t seed) {
  RolloutConfig cfg;
  cfg.duration = 0.4;
  cfg.settle_time = 0.1;
  cfg.dt = 5e-4;
  cfg.seed = seed;
  return cfg;
}

LearnerConfig quick_learner(std::uint64_t seed, int max_steps) {
  LearnerConfig cfg;
  cfg.seed = seed;
  cfg.max_steps = max_steps;
  return cfg;
}

LearningTrace fake_trace(std::initializer_list<double> rewards) {
  LearningTrace trace;
  int step = 0;
  for (double r : rewards) {
    TraceRecord rec;
    rec.step = step++;
    rec.params = PolicyParams{20.0, 30.0};
    rec.reward = r;
    rec.rollout_count = 5 * step;
    trace.records.push_back(rec);
  }
  trace.final_params = PolicyParams{20.0, 30.0};
  trace.total_rollouts = 5 * step;
  return trace;
}

}  // namespace

TEST_CASE("a steadily improving trace does not switch") {
  CurriculumSpec spec;
  spec.learner_configs = {quick_learner(1, 50)};
  spec.max_steps_per_env = 50;
  const RobotParams next_env = make_environment(EnvLevel::Original, RobotParams::defaults());
  const LearningTrace trace = fake_trace({0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7});
  CHECK(!should_switch(trace, next_env, spec, 0, quick_rollouts(1)));
}

TEST_CASE("a stalled trace with a live next-environment gradient switches") {
  CurriculumSpec spec;
  spec.learner_configs = {quick_learner(2, 50)};
  spec.max_steps_per_env = 50;
  // Probe at a mid-box policy in the beginner environment: hopping reward
  // with a live slope.
  const RobotParams next_env = make_environment(EnvLevel::Beginner, RobotParams::defaults());
  LearningTrace trace = fake_trace({0.5, 0.5, 0.502, 0.501, 0.5, 0.5, 0.501});
  trace.final_params = PolicyParams{20.0, 30.0};
  long probe_rollouts = 0;
  const bool decision = should_switch(trace, next_env, spec, 0, quick_rollouts(2), &probe_rollouts);
  CHECK(decision);
  CHECK(probe_rollouts == 5);
}

TEST_CASE("a stalled trace with a dead next-environment gradient stays") {
  CurriculumSpec spec;
  spec.learner_configs = {quick_learner(3, 50)};
  spec.max_steps_per_env = 50;
  // Probe deep in the failure plateau: every probe rollout fails, the
  // gradient is exactly zero, so the learner stays and keeps refining.
  RobotParams hopeless = make_environment(EnvLevel::Original, RobotParams::defaults());
  hopeless.hip_angle_max = deg2rad(5.0);  // everything fails immediately
  LearningTrace trace = fake_trace({0.5, 0.5, 0.5, 0.5, 0.5, 0.5});
  trace.final_params = PolicyParams{20.0, 30.0};
  CHECK(!should_switch(trace, hopeless, spec, 0, quick_rollouts(3)));

  CurriculumSpec ungated = spec;
  ungated.probe_next = false;
  CHECK(should_switch(trace, hopeless, ungated, 0, quick_rollouts(3)));
}

TEST_CASE("a single-environment curriculum reproduces run_learning") {
  const RobotParams base = RobotParams::defaults();
  const RolloutConfig rollout_cfg = quick_rollouts(11);
  const LearnerConfig learner_cfg = quick_learner(11, 6);

  CurriculumSpec spec;
  spec.environments = {EnvLevel::Beginner};
  spec.learner_configs = {learner_cfg};
  const PolicyParams init{18.0, 28.0};

  const CurriculumResult cur = run_curriculum(init, spec, rollout_cfg, base);
  const LearningTrace direct = run_learning(
      init, make_environment(EnvLevel::Beginner, base), learner_cfg, rollout_cfg, "beginner");

  REQUIRE(cur.traces.size() == 1);
  const LearningTrace& via_curriculum = cur.traces.front();
  REQUIRE(via_curriculum.records.size() == direct.records.size());
  for (std::size_t k = 0; k < direct.records.size(); ++k) {
    CHECK(via_curriculum.records[k].params.theta0_deg == direct.records[k].params.theta0_deg);
    CHECK(via_curriculum.records[k].params.theta1_deg == direct.records[k].params.theta1_deg);
    CHECK(via_curriculum.records[k].reward == direct.records[k].reward);
    CHECK(via_curriculum.records[k].gradient[0] == direct.records[k].gradient[0]);
  }
  CHECK(cur.final_params.theta0_deg == direct.final_params.theta0_deg);
  CHECK(cur.probe_rollouts == 0);
  CHECK(cur.total_rollouts == direct.total_rollouts);
}

TEST_CASE("budget accounting covers every rollout including probes") {
  const RobotParams base = RobotParams::defaults();
  CurriculumSpec spec;
  spec.environments = {EnvLevel::Beginner, EnvLevel::Original};
  spec.learner_configs = {quick_learner(21, 10)};
  spec.max_steps_per_env = 4;
  spec.stall_window = 2;
  const CurriculumResult result =
      run_curriculum(PolicyParams{20.0, 30.0}, spec, quick_rollouts(21), base);
  long per_env_total = 0;
  for (const LearningTrace& trace : result.traces) {
    per_env_total += trace.total_rollouts;
    CHECK(trace.total_rollouts == static_cast<long>(trace.records.size()) * 5);
  }
  CHECK(result.total_rollouts == per_env_total + result.probe_rollouts);
}

TEST_CASE("revisiting an environment restores the memorized best policy") {
  const RobotParams base = RobotParams::defaults();
  CurriculumSpec spec;
  spec.environments = {EnvLevel::Beginner, EnvLevel::Original, EnvLevel::Beginner};
  spec.learner_configs = {quick_learner(31, 5)};
  spec.max_steps_per_env = 3;
  spec.stall_window = 2;
  spec.probe_next = false;
  const CurriculumResult result =
      run_curriculum(PolicyParams{20.0, 30.0}, spec, quick_rollouts(31), base);
  REQUIRE(result.traces.size() == 3);

  // Best beginner params seen across the first two stages (the original
  // stage never updates the beginner memory).
  const LearningTrace& first = result.traces[0];
  double best_reward = -1.0;
  PolicyParams best{};
  for (const TraceRecord& rec : first.records) {
    if (rec.reward > best_reward) {
      best_reward = rec.reward;
      best = rec.params;
    }
  }
  const LearningTrace& revisit = result.traces[2];
  REQUIRE(!revisit.records.empty());
  CHECK(revisit.records.front().params.theta0_deg == best.theta0_deg);
  CHECK(revisit.records.front().params.theta1_deg == best.theta1_deg);
}

TEST_CASE("criteria report on synthetic landscapes") {
  auto cone_grid = [](double cx, double cy, double radius, const std::string& label) {
    LandscapeGrid grid;
    for (double x = 0.0; x <= 40.0 + 1e-9; x += 1.0) grid.theta0_values.push_back(x);
    for (double y = 10.0; y <= 45.0 + 1e-9; y += 1.0) grid.theta1_values.push_back(y);
    grid.reward.resize(grid.n0() * grid.n1());
    grid.failed.assign(grid.reward.size(), 0);
    for (std::size_t i = 0; i < grid.n0(); ++i) {
      for (std::size_t j = 0; j < grid.n1(); ++j) {
        const double d = std::hypot(grid.theta0_values[i] - cx, grid.theta1_values[j] - cy);
        grid.reward[i * grid.n1() + j] = std::max(0.0, 1.0 - d / radius);
      }
    }
    grid.env_label = label;
    return grid;
  };

  SUBCASE("self-funnel margin equals the peak's own depth") {
    const LandscapeGrid grid = cone_grid(20, 27.5, 10, "a");
    const CriteriaReport report = criteria_report({grid, grid}, 0.1);
    const SgsSummary sgs = extract_sgs(grid, 0.1);
    const FunnelReport self = funnel_check(sgs, sgs);
    REQUIRE(report.funnels.size() == 1);
    CHECK(report.funnels[0].peak_contained);
    CHECK(report.funnels[0].margin_deg == doctest::Approx(self.margin_deg));
    CHECK(!report.ordering_satisfied);  // equal areas are not strictly decreasing
  }

  SUBCASE("nested shrinking cones satisfy the ordering") {
    const CriteriaReport report = criteria_report(
        {cone_grid(20, 27.5, 14, "beginner"), cone_grid(21, 28, 10, "intermediate"),
         cone_grid(22, 28.5, 7, "original")},
        0.1);
    CHECK(report.ordering_satisfied);
    REQUIRE(report.funnels.size() == 2);
    CHECK(report.funnels[0].peak_contained);
    CHECK(report.funnels[1].peak_contained);
    const std::string text = criteria_report_to_json_text(report);
    CHECK(text.find("reference_area_fractions") != std::string::npos);
    CHECK(text.find("0.46") != std::string::npos);
  }

  SUBCASE("mismatched boxes are rejected") {
    LandscapeGrid other = cone_grid(20, 27.5, 10, "b");
    other.theta0_values.pop_back();
    other.reward.resize(other.n0() * other.n1());
    other.failed.resize(other.reward.size());
    CHECK_THROWS_AS(criteria_report({cone_grid(20, 27.5, 10, "a"), other}, 0.1),
                    ParameterError);
  }
}

TEST_CASE("policy memory keeps the best reward per environment") {
  PolicyMemory memory;
  memory.update("beginner", PolicyParams{10, 20}, 0.5);
  memory.update("beginner", PolicyParams{12, 22}, 0.4);  // worse, ignored
  memory.update("beginner", PolicyParams{14, 24}, 0.9);
  REQUIRE(memory.lookup("beginner") != nullptr);
  CHECK(memory.lookup("beginner")->reward == 0.9);
  CHECK(memory.lookup("beginner")->params.theta0_deg == 14);
  CHECK(memory.lookup("original") == nullptr);
  const std::string text = memory_to_json_text(memory);
  CHECK(text.find("\"beginner\"") != std::string::npos);
  CHECK(text.find("reward_mps") != std::string::npos);
}
