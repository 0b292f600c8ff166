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

#ifndef HOPCURVE_CURRICULUM_HPP_
#define HOPCURVE_CURRICULUM_HPP_

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hopcurve/landscape.hpp"
#include "hopcurve/learner.hpp"
#include "hopcurve/sim.hpp"

namespace hopcurve {

// Sequencing rules for learning across environments. Revisiting an
// environment already listed earlier configures a switch-back; entering it
// restores the memorized best policy first.
struct CurriculumSpec {
  std::vector<EnvLevel> environments{EnvLevel::Beginner, EnvLevel::Intermediate,
                                     EnvLevel::Original};
  std::vector<LearnerConfig> learner_configs;  // one per environment, or one broadcast
  int stall_window = 5;            // steps
  double stall_tolerance = 0.01;   // relative reward improvement
  int max_steps_per_env = 8;
  bool probe_next = true;          // gate switches on a next-environment gradient probe

  void validate() const;  // throws ParameterError
  const LearnerConfig& config_for(std::size_t env_index) const;
};

// Best policy seen per environment, for safe switch-backs.
struct PolicyMemory {
  struct Entry {
    PolicyParams params;
    double reward = 0.0;
  };
  std::map<std::string, Entry> best;

  void update(const std::string& env_label, const PolicyParams& p, double reward);
  const Entry* lookup(const std::string& env_label) const;
};

// True when learning has stalled (or the per-env step budget is exhausted)
// and, when probe_next is set, a gradient probe in the next environment at
// the current params clears min_gradient_norm. Probe rollouts are reported
// through probe_rollouts_used.
bool should_switch(const LearningTrace& trace, const RobotParams& next_env,
                   const CurriculumSpec& spec, std::size_t next_env_index,
                   const RolloutConfig& rollout_cfg, long* probe_rollouts_used = nullptr);

struct CurriculumResult {
  std::vector<LearningTrace> traces;  // one per environment, in order
  PolicyMemory memory;
  PolicyParams final_params;
  long probe_rollouts = 0;
  long total_rollouts = 0;  // per-env rollouts plus probe rollouts, nothing hidden
};

// Runs learning through the environment sequence, carrying params across
// switches; the last environment runs to the plain learning stop rule.
CurriculumResult run_curriculum(const PolicyParams& init, const CurriculumSpec& spec,
                                const RolloutConfig& rollout_cfg, const RobotParams& base);

// Automated check of the training-wheel design criteria: per-environment
// SGS summaries, pairwise funneling along the sequence, and the SGS
// area-fraction ordering, next to the fractions measured on the physical
// platform this simulator models.
struct CriteriaReport {
  double threshold = 0.0;
  std::vector<SgsSummary> summaries;
  std::vector<FunnelReport> funnels;
  std::vector<double> area_fractions;
  bool ordering_satisfied = false;  // strictly decreasing along the sequence
};

CriteriaReport criteria_report(const std::vector<LandscapeGrid>& landscapes,
                               double threshold);

std::string criteria_report_to_json_text(const CriteriaReport& report);
std::string memory_to_json_text(const PolicyMemory& memory);

}  // namespace hopcurve

#endif  // HOPCURVE_CURRICULUM_HPP_
