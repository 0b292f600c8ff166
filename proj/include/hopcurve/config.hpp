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

#ifndef HOPCURVE_CONFIG_HPP_
#define HOPCURVE_CONFIG_HPP_

#include <cstdint>
#include <string>

#include "hopcurve/curriculum.hpp"

namespace hopcurve {

// One JSON document describing a full run; unknown keys are rejected.
// Schema and defaults in docs/config.md.
struct RunConfig {
  std::uint64_t master_seed = 0;
  std::string output_dir = "hopcurve_run";
  RobotParams robot;
  ParameterBox box;
  double grid_resolution_deg = 1.0;
  RolloutConfig rollout;
  CurriculumSpec curriculum;
  PolicyParams init{15.0, 25.0};
  int jobs = 0;  // 0: one worker per hardware thread
};

RunConfig run_config_from_json_text(const std::string& text);
RunConfig load_run_config(const std::string& path);

}  // namespace hopcurve

#endif  // HOPCURVE_CONFIG_HPP_
