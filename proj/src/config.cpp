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

#include "hopcurve/config.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace hopcurve {

namespace {

using nlohmann::json;

[[noreturn]] void bad(const std::string& message) { throw ParameterError("config: " + message); }

// Strict object walker: every key must be consumed exactly once.
class ObjectReader {
 public:
  ObjectReader(const json& doc, std::string scope) : doc_(doc), scope_(std::move(scope)) {
    if (!doc.is_object()) bad(scope_ + " must be a JSON object");
  }

  template <typename T>
  void read(const char* key, T& out) {
    auto it = doc_.find(key);
    if (it == doc_.end()) return;
    try {
      out = it->get<T>();
    } catch (const json::exception&) {
      bad(scope_ + "." + key + " has the wrong type");
    }
    consumed_.push_back(key);
  }

  const json* child(const char* key) {
    auto it = doc_.find(key);
    if (it == doc_.end()) return nullptr;
    consumed_.push_back(key);
    return &*it;
  }

  void finish() const {
    for (const auto& [key, value] : doc_.items()) {
      bool known = false;
      for (const auto& k : consumed_) {
        if (k == key) {
          known = true;
          break;
        }
      }
      if (!known) bad("unknown key '" + scope_ + "." + key + "'");
    }
  }

 private:
  const json& doc_;
  std::string scope_;
  std::vector<std::string> consumed_;
};

ParameterBox parse_box(const json& doc) {
  ObjectReader reader(doc, "box");
  ParameterBox box;
  reader.read("theta0_min_deg", box.theta0_min_deg);
  reader.read("theta0_max_deg", box.theta0_max_deg);
  reader.read("theta1_min_deg", box.theta1_min_deg);
  reader.read("theta1_max_deg", box.theta1_max_deg);
  reader.finish();
  box.validate();
  return box;
}

RolloutConfig parse_rollout(const json& doc, std::uint64_t master_seed) {
  ObjectReader reader(doc, "rollout");
  RolloutConfig cfg;
  cfg.seed = master_seed;
  reader.read("duration_s", cfg.duration);
  reader.read("dt_s", cfg.dt);
  reader.read("settle_time_s", cfg.settle_time);
  reader.read("seed", cfg.seed);
  reader.read("record_trajectory", cfg.record_trajectory);
  reader.read("trajectory_sample_stride", cfg.trajectory_sample_stride);
  reader.finish();
  cfg.validate();
  return cfg;
}

LearnerConfig parse_learner(const json& doc, const std::string& scope,
                            std::uint64_t master_seed, const ParameterBox& box) {
  ObjectReader reader(doc, scope);
  LearnerConfig cfg;
  cfg.seed = master_seed;
  cfg.box = box;
  reader.read("perturbation_deg", cfg.perturbation_deg);
  reader.read("learning_rate", cfg.learning_rate);
  reader.read("max_steps", cfg.max_steps);
  reader.read("rollouts_per_eval", cfg.rollouts_per_eval);
  reader.read("min_gradient_norm", cfg.min_gradient_norm);
  reader.read("random_step_size_deg", cfg.random_step_size_deg);
  reader.read("seed", cfg.seed);
  reader.finish();
  cfg.validate();
  return cfg;
}

void parse_curriculum(const json& doc, CurriculumSpec& spec) {
  ObjectReader reader(doc, "curriculum");
  if (const json* envs = reader.child("environments")) {
    if (!envs->is_array() || envs->empty()) bad("curriculum.environments must be a non-empty array");
    spec.environments.clear();
    for (const auto& name : *envs) {
      if (!name.is_string()) bad("curriculum.environments entries must be strings");
      spec.environments.push_back(env_level_from_string(name.get<std::string>()));
    }
  }
  reader.read("stall_window", spec.stall_window);
  reader.read("stall_tolerance", spec.stall_tolerance);
  reader.read("max_steps_per_env", spec.max_steps_per_env);
  reader.read("probe_next", spec.probe_next);
  reader.finish();
}

PolicyParams parse_init(const json& doc) {
  ObjectReader reader(doc, "init");
  PolicyParams p{15.0, 25.0};
  reader.read("theta0_deg", p.theta0_deg);
  reader.read("theta1_deg", p.theta1_deg);
  reader.read("omega_rad_s", p.omega_rad_s);
  reader.finish();
  return p;
}

}  // namespace

RunConfig run_config_from_json_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    bad(e.what());
  }
  ObjectReader reader(doc, "config");
  RunConfig cfg;
  reader.read("master_seed", cfg.master_seed);
  reader.read("output_dir", cfg.output_dir);
  reader.read("grid_resolution_deg", cfg.grid_resolution_deg);
  reader.read("jobs", cfg.jobs);

  if (const json* robot = reader.child("robot")) {
    cfg.robot = robot_params_from_json_text(robot->dump());
  }
  if (const json* box = reader.child("box")) cfg.box = parse_box(*box);
  cfg.rollout = RolloutConfig{};
  cfg.rollout.seed = cfg.master_seed;
  if (const json* rollout = reader.child("rollout")) {
    cfg.rollout = parse_rollout(*rollout, cfg.master_seed);
  }
  if (const json* curriculum = reader.child("curriculum")) {
    parse_curriculum(*curriculum, cfg.curriculum);
  }

  LearnerConfig base_learner;
  base_learner.seed = cfg.master_seed;
  base_learner.box = cfg.box;
  if (const json* learner = reader.child("learner")) {
    base_learner = parse_learner(*learner, "learner", cfg.master_seed, cfg.box);
  }
  cfg.curriculum.learner_configs.assign(1, base_learner);
  if (const json* learners = reader.child("learners")) {
    if (!learners->is_array() || learners->size() != cfg.curriculum.environments.size()) {
      bad("learners must be an array with one entry per environment");
    }
    cfg.curriculum.learner_configs.clear();
    for (std::size_t k = 0; k < learners->size(); ++k) {
      cfg.curriculum.learner_configs.push_back(parse_learner(
          (*learners)[k], "learners[" + std::to_string(k) + "]", cfg.master_seed, cfg.box));
    }
  }

  if (const json* init = reader.child("init")) cfg.init = parse_init(*init);
  reader.finish();

  cfg.robot.validate();
  if (!(cfg.grid_resolution_deg > 0.0)) bad("grid_resolution_deg must be > 0");
  cfg.curriculum.validate();
  if (!cfg.box.contains(cfg.init)) bad("init must lie inside the box");
  return cfg;
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParameterError("cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return run_config_from_json_text(buf.str());
}

}  // namespace hopcurve
