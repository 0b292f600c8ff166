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

#include <atomic>
#include <cmath>
#include <sstream>

#include <doctest.h>

#include "hopcurve/learner.hpp"
#include "hopcurve/rng.hpp"

using namespace hopcurve;

namespace {

RewardFn quadratic_field() {
  return [](const PolicyParams& p, std::uint64_t) {
    return -(p.theta0_deg - 20.0) * (p.theta0_deg - 20.0) -
           (p.theta1_deg - 25.0) * (p.theta1_deg - 25.0);
  };
}

LearnerConfig test_config() {
  LearnerConfig cfg;
  cfg.perturbation_deg = 1.0;
  cfg.learning_rate = 2.5;
  cfg.seed = 0;
  return cfg;
}

}  // namespace

TEST_CASE("central differences are exact on the quadratic field") {
  const GradientEstimate est =
      estimate_gradient(PolicyParams{10.0, 20.0}, quadratic_field(), test_config(), 1);
  CHECK(std::abs(est.gradient[0] - 20.0) <= 1e-9 * 20.0);
  CHECK(std::abs(est.gradient[1] - 10.0) <= 1e-9 * 10.0);
  CHECK(est.center_reward == doctest::Approx(-125.0));
  CHECK(est.rollouts_used == 5);
}

TEST_CASE("a noise-free plateau gives a zero gradient") {
  const RewardFn flat = [](const PolicyParams&, std::uint64_t) { return 0.0; };
  const GradientEstimate est =
      estimate_gradient(PolicyParams{20.0, 30.0}, flat, test_config(), 2);
  CHECK(est.gradient[0] == 0.0);
  CHECK(est.gradient[1] == 0.0);
}

TEST_CASE("noisy constant field has no preferred gradient direction") {
  const RewardFn noisy = [](const PolicyParams&, std::uint64_t seed) {
    Rng rng(seed);
    return 1.0 + 0.1 * rng.normal();
  };
  double sum0 = 0.0, sum1 = 0.0, sumsq = 0.0;
  const int trials = 1000;
  for (int k = 0; k < trials; ++k) {
    const GradientEstimate est =
        estimate_gradient(PolicyParams{20.0, 30.0}, noisy, test_config(), 1000 + k);
    sum0 += est.gradient[0];
    sum1 += est.gradient[1];
    sumsq += est.gradient[0] * est.gradient[0] + est.gradient[1] * est.gradient[1];
  }
  const double mean0 = sum0 / trials;
  const double mean1 = sum1 / trials;
  const double per_axis_std = std::sqrt(sumsq / (2.0 * trials));
  // Mean gradient should vanish to within a few standard errors.
  CHECK(std::abs(mean0) < 4.0 * per_axis_std / std::sqrt(trials));
  CHECK(std::abs(mean1) < 4.0 * per_axis_std / std::sqrt(trials));
  CHECK(per_axis_std > 0.0);
}

TEST_CASE("cubic fields converge at second order in the perturbation") {
  const RewardFn cubic = [](const PolicyParams& p, std::uint64_t) {
    return 0.01 * p.theta0_deg * p.theta0_deg * p.theta0_deg;
  };
  const double exact = 3.0 * 0.01 * 20.0 * 20.0;
  LearnerConfig cfg = test_config();
  cfg.perturbation_deg = 2.0;
  const double err_coarse =
      std::abs(estimate_gradient(PolicyParams{20.0, 30.0}, cubic, cfg, 3).gradient[0] - exact);
  cfg.perturbation_deg = 1.0;
  const double err_fine =
      std::abs(estimate_gradient(PolicyParams{20.0, 30.0}, cubic, cfg, 3).gradient[0] - exact);
  CHECK(err_coarse / err_fine == doctest::Approx(4.0).epsilon(0.05));
}

TEST_CASE("perturbations at the box edge use the clipped divisor") {
  // At theta0 = 0 the minus point clips back to 0: one-sided difference.
  const RewardFn linear = [](const PolicyParams& p, std::uint64_t) {
    return 0.5 * p.theta0_deg;
  };
  const GradientEstimate est =
      estimate_gradient(PolicyParams{0.0, 30.0}, linear, test_config(), 4);
  CHECK(est.gradient[0] == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("learn_step follows the gradient and clips to the box") {
  const LearnerConfig cfg = test_config();
  const PolicyParams a = learn_step(PolicyParams{10.0, 20.0}, {2.0, 1.0}, cfg, 1);
  CHECK(a.theta0_deg == doctest::Approx(15.0));
  CHECK(a.theta1_deg == doctest::Approx(22.5));

  const PolicyParams b = learn_step(PolicyParams{39.0, 44.0}, {2.0, 2.0}, cfg, 1);
  CHECK(b.theta0_deg == doctest::Approx(40.0));
  CHECK(b.theta1_deg == doctest::Approx(45.0));
}

TEST_CASE("zero gradient triggers an escape step of the configured length") {
  const LearnerConfig cfg = test_config();
  const PolicyParams from{20.0, 30.0};
  const PolicyParams to = learn_step(from, {0.0, 0.0}, cfg, 77);
  const double dist = std::hypot(to.theta0_deg - from.theta0_deg,
                                 to.theta1_deg - from.theta1_deg);
  CHECK(dist == doctest::Approx(cfg.random_step_size_deg).epsilon(1e-12));
  // Deterministic in the step seed, different across seeds.
  const PolicyParams again = learn_step(from, {0.0, 0.0}, cfg, 77);
  CHECK(again.theta0_deg == to.theta0_deg);
  const PolicyParams other = learn_step(from, {0.0, 0.0}, cfg, 78);
  CHECK((other.theta0_deg != to.theta0_deg || other.theta1_deg != to.theta1_deg));
}

TEST_CASE("learning converges on the quadratic oracle") {
  LearnerConfig cfg = test_config();
  cfg.learning_rate = 0.25;  // stable for unit curvature
  cfg.max_steps = 30;
  for (const PolicyParams init : {PolicyParams{1.0, 11.0}, PolicyParams{39.0, 44.0},
                                  PolicyParams{5.0, 42.0}}) {
    const LearningTrace trace = run_learning(init, quadratic_field(), cfg, "synthetic");
    double best = 1e300;
    for (const TraceRecord& rec : trace.records) {
      best = std::min(best, std::hypot(rec.params.theta0_deg - 20.0,
                                       rec.params.theta1_deg - 25.0));
    }
    best = std::min(best, std::hypot(trace.final_params.theta0_deg - 20.0,
                                     trace.final_params.theta1_deg - 25.0));
    CHECK(trace.records.size() <= 30);
    CHECK(best < 0.5);
  }
}

TEST_CASE("rollout budget accounting is exact") {
  std::atomic<long> calls{0};
  const RewardFn counted = [&](const PolicyParams& p, std::uint64_t) {
    calls.fetch_add(1);
    return -(p.theta0_deg - 20.0) * (p.theta0_deg - 20.0);
  };
  LearnerConfig cfg = test_config();
  cfg.learning_rate = 0.1;
  cfg.max_steps = 7;
  cfg.rollouts_per_eval = 3;
  const LearningTrace trace = run_learning(PolicyParams{10.0, 25.0}, counted, cfg, "x");
  const long per_step = 4 * cfg.rollouts_per_eval + 1;
  CHECK(trace.total_rollouts == static_cast<long>(trace.records.size()) * per_step);
  CHECK(calls.load() == trace.total_rollouts);
  long prev = 0;
  for (const TraceRecord& rec : trace.records) {
    CHECK(rec.rollout_count > prev);
    prev = rec.rollout_count;
  }
}

TEST_CASE("trace parameters never leave the box") {
  const RewardFn outward = [](const PolicyParams& p, std::uint64_t) {
    return p.theta0_deg + p.theta1_deg;  // pushes toward the top-right corner
  };
  LearnerConfig cfg = test_config();
  cfg.max_steps = 40;
  const LearningTrace trace = run_learning(PolicyParams{35.0, 40.0}, outward, cfg, "x");
  for (const TraceRecord& rec : trace.records) CHECK(cfg.box.contains(rec.params));
  CHECK(cfg.box.contains(trace.final_params));
}

TEST_CASE("noise-free runs are seed-invariant before any escape step") {
  LearnerConfig cfg = test_config();
  cfg.learning_rate = 0.25;
  cfg.max_steps = 12;  // gradient stays above min_gradient_norm throughout
  cfg.seed = 100;
  const LearningTrace a = run_learning(PolicyParams{5.0, 15.0}, quadratic_field(), cfg, "x");
  cfg.seed = 200;
  const LearningTrace b = run_learning(PolicyParams{5.0, 15.0}, quadratic_field(), cfg, "x");
  REQUIRE(a.records.size() == b.records.size());
  for (std::size_t k = 0; k < a.records.size(); ++k) {
    CHECK(a.records[k].params.theta0_deg == b.records[k].params.theta0_deg);
    CHECK(a.records[k].params.theta1_deg == b.records[k].params.theta1_deg);
  }
}

TEST_CASE("the stop rule fires on converged rewards but not on zero plateaus") {
  // Converging reward sequence: stops before max_steps.
  const RewardFn settled = [](const PolicyParams&, std::uint64_t) { return 1.0; };
  LearnerConfig cfg = test_config();
  cfg.max_steps = 50;
  cfg.min_gradient_norm = 1e-4;
  const LearningTrace flat = run_learning(PolicyParams{20.0, 30.0}, settled, cfg, "x");
  CHECK(flat.records.size() == 6);  // 5 sub-1% changes after the first step

  const RewardFn plateau = [](const PolicyParams&, std::uint64_t) { return 0.0; };
  const LearningTrace zero = run_learning(PolicyParams{20.0, 30.0}, plateau, cfg, "x");
  CHECK(zero.records.size() == 50);  // meanders to the step budget
}

TEST_CASE("trace CSV has the documented header") {
  LearnerConfig cfg = test_config();
  cfg.max_steps = 3;
  const LearningTrace trace =
      run_learning(PolicyParams{10.0, 20.0}, quadratic_field(), cfg, "beginner");
  std::ostringstream out;
  write_trace_csv(out, trace);
  CHECK(out.str().rfind("step,theta0_deg,theta1_deg,reward_mps,grad0,grad1,env,rollouts\n",
                        0) == 0);
}
