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

// Command-line front end: landscape mapping, learning, curriculum runs,
// SGS/funnel analysis and single-rollout debugging. Exit codes: 0 success,
// 2 configuration or validation error, 3 simulation-level failure.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hopcurve/config.hpp"
#include "hopcurve/curriculum.hpp"
#include "hopcurve/landscape.hpp"
#include "hopcurve/learner.hpp"
#include "hopcurve/svg.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitSimFailure = 3;

using namespace hopcurve;

std::uint64_t master_seed_fallback() {
  if (const char* env = std::getenv("HOPCURVE_SEED")) {
    return std::strtoull(env, nullptr, 10);
  }
  return 0;
}

bool parse_pair(const std::string& text, double& a, double& b) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) return false;
  try {
    std::size_t used = 0;
    a = std::stod(text.substr(0, comma), &used);
    if (used != comma) return false;
    const std::string rest = text.substr(comma + 1);
    b = std::stod(rest, &used);
    return used == rest.size();
  } catch (const std::exception&) {
    return false;
  }
}

RobotParams load_base_robot(const std::string& robot_file) {
  return robot_file.empty() ? RobotParams::defaults() : load_robot_params(robot_file);
}

struct RolloutFlags {
  double duration = 5.0;
  double dt = 1e-4;
  double settle = 0.5;

  void attach(CLI::App* cmd) {
    cmd->add_option("--duration", duration, "rollout length [s]")->capture_default_str();
    cmd->add_option("--dt", dt, "integration step [s]")->capture_default_str();
    cmd->add_option("--settle", settle, "settle time excluded from the reward [s]")
        ->capture_default_str();
  }
  RolloutConfig make(std::uint64_t seed) const {
    RolloutConfig cfg;
    cfg.duration = duration;
    cfg.dt = dt;
    cfg.settle_time = settle;
    cfg.seed = seed;
    cfg.validate();
    return cfg;
  }
};

int cmd_rollout(const std::string& env_name, const std::string& params_text, double omega,
                std::uint64_t seed, const RolloutFlags& flags, const std::string& robot_file,
                const std::string& dump_file) {
  double t0 = 0.0, t1 = 0.0;
  if (!parse_pair(params_text, t0, t1)) {
    std::cerr << "error: --params expects 'theta0,theta1' in degrees\n";
    return kExitConfig;
  }
  const RobotParams env = make_environment(env_level_from_string(env_name),
                                           load_base_robot(robot_file));
  PolicyParams policy{t0, t1, omega};
  RolloutConfig cfg = flags.make(seed);
  cfg.record_trajectory = !dump_file.empty();

  const RolloutResult result = rollout(policy, env, cfg);
  std::cout << "reward_mps " << result.reward << "\n"
            << "failure " << (result.failure ? to_string(*result.failure) : "none") << "\n"
            << "displacement_m " << result.displacement << "\n"
            << "hops " << result.hop_count << "\n"
            << "peak_height_m " << result.peak_height << "\n";
  if (!dump_file.empty()) {
    std::ofstream out(dump_file, std::ios::binary);
    if (!out) {
      std::cerr << "error: cannot open " << dump_file << "\n";
      return kExitConfig;
    }
    write_trajectory_csv(out, result.trajectory);
  }
  return kExitOk;
}

int cmd_map(const std::string& env_name, double grid_res, std::uint64_t seed,
            const std::string& out_file, const std::string& svg_file, double threshold,
            const RolloutFlags& flags, const std::string& robot_file, int jobs) {
  if (!(grid_res > 0.0)) {
    std::cerr << "error: --grid must be > 0\n";
    return kExitConfig;
  }
  const RobotParams env = make_environment(env_level_from_string(env_name),
                                           load_base_robot(robot_file));
  MapStats stats;
  const LandscapeGrid grid =
      map_landscape(env, ParameterBox{}, grid_res, flags.make(seed), env_name, jobs, &stats);

  save_landscape_csv(out_file, grid);
  const SgsSummary sgs = extract_sgs(grid, threshold);
  if (!svg_file.empty()) write_text_file(svg_file, landscape_svg(grid, sgs));
  std::cout << "nodes " << grid.reward.size() << "\n"
            << "failed_nodes " << stats.failed_nodes << "\n"
            << "sgs_area_fraction " << sgs.area_fraction << "\n"
            << "peak " << sgs.peak_params[0] << "," << sgs.peak_params[1] << "\n"
            << "peak_reward_mps " << sgs.peak_reward << "\n";
  if (2 * stats.diverged_nodes > static_cast<long>(grid.reward.size())) {
    std::cerr << "error: simulation diverged on more than half of the grid\n";
    return kExitSimFailure;
  }
  return kExitOk;
}

int cmd_learn(const std::string& env_name, const std::string& init_text, int steps,
              std::uint64_t seed, const std::string& out_file, const RolloutFlags& flags,
              const std::string& robot_file, double lr, double perturbation) {
  double t0 = 0.0, t1 = 0.0;
  if (!parse_pair(init_text, t0, t1)) {
    std::cerr << "error: --init expects 'theta0,theta1' in degrees\n";
    return kExitConfig;
  }
  LearnerConfig cfg;
  cfg.max_steps = steps;
  cfg.seed = seed;
  cfg.learning_rate = lr;
  cfg.perturbation_deg = perturbation;
  const PolicyParams init{t0, t1};
  if (!cfg.box.contains(init)) {
    std::cerr << "error: --init lies outside the parameter box [" << cfg.box.theta0_min_deg
              << "," << cfg.box.theta0_max_deg << "]x[" << cfg.box.theta1_min_deg << ","
              << cfg.box.theta1_max_deg << "]\n";
    return kExitConfig;
  }
  const RobotParams env = make_environment(env_level_from_string(env_name),
                                           load_base_robot(robot_file));
  const LearningTrace trace = run_learning(init, env, cfg, flags.make(seed), env_name);
  std::ofstream out(out_file, std::ios::binary);
  if (!out) {
    std::cerr << "error: cannot open " << out_file << "\n";
    return kExitConfig;
  }
  write_trace_csv(out, trace);
  std::cout << "steps " << trace.records.size() << "\n"
            << "final " << trace.final_params.theta0_deg << ","
            << trace.final_params.theta1_deg << "\n"
            << "final_reward_mps "
            << (trace.records.empty() ? 0.0 : trace.records.back().reward) << "\n"
            << "rollouts " << trace.total_rollouts << "\n";
  return kExitOk;
}

int cmd_curriculum(const std::string& config_file, const std::string& out_dir_override,
                   std::optional<std::uint64_t> seed_override) {
  RunConfig cfg = load_run_config(config_file);
  if (!out_dir_override.empty()) cfg.output_dir = out_dir_override;
  if (seed_override) {
    cfg.master_seed = *seed_override;
    cfg.rollout.seed = *seed_override;
    for (LearnerConfig& lc : cfg.curriculum.learner_configs) lc.seed = *seed_override;
  }

  std::filesystem::create_directories(cfg.output_dir);
  const CurriculumResult result =
      run_curriculum(cfg.init, cfg.curriculum, cfg.rollout, cfg.robot);

  std::ostringstream summary;
  summary << "environments " << cfg.curriculum.environments.size() << "\n";
  for (const LearningTrace& trace : result.traces) {
    const std::string path = cfg.output_dir + "/trace_" + trace.env_label + ".csv";
    std::ofstream out(path, std::ios::binary);
    if (!out) {
      std::cerr << "error: cannot open " << path << "\n";
      return kExitConfig;
    }
    write_trace_csv(out, trace);
    summary << trace.env_label << " steps " << trace.records.size() << " best_reward_mps "
            << (result.memory.lookup(trace.env_label)
                    ? result.memory.lookup(trace.env_label)->reward
                    : 0.0)
            << "\n";
  }
  write_text_file(cfg.output_dir + "/memory.json", memory_to_json_text(result.memory));

  nlohmann::json report;
  report["final"] = {{"theta0_deg", result.final_params.theta0_deg},
                     {"theta1_deg", result.final_params.theta1_deg}};
  report["total_rollouts"] = result.total_rollouts;
  report["master_seed"] = cfg.master_seed;
  write_text_file(cfg.output_dir + "/report.json", report.dump(2) + "\n");

  summary << "final " << result.final_params.theta0_deg << ","
          << result.final_params.theta1_deg << "\n"
          << "total_rollouts " << result.total_rollouts << "\n";
  write_text_file(cfg.output_dir + "/summary.txt", summary.str());
  std::cout << summary.str();
  return kExitOk;
}

int cmd_analyze(const std::vector<std::string>& inputs, const std::string& labels_text,
                double threshold, const std::string& out_file, const std::string& svg_file) {
  if (inputs.size() < 2) {
    std::cerr << "error: --in needs at least two landscape CSVs\n";
    return kExitConfig;
  }
  std::vector<std::string> labels;
  if (!labels_text.empty()) {
    std::stringstream ss(labels_text);
    std::string item;
    while (std::getline(ss, item, ',')) labels.push_back(item);
    if (labels.size() != inputs.size()) {
      std::cerr << "error: --labels must match --in count\n";
      return kExitConfig;
    }
  } else {
    for (const std::string& path : inputs) {
      labels.push_back(std::filesystem::path(path).stem().string());
    }
  }
  std::vector<LandscapeGrid> grids;
  for (std::size_t k = 0; k < inputs.size(); ++k) {
    grids.push_back(load_landscape_csv(inputs[k], labels[k]));
  }
  const CriteriaReport report = criteria_report(grids, threshold);
  write_text_file(out_file, criteria_report_to_json_text(report));
  if (!svg_file.empty()) write_text_file(svg_file, funnel_overlay_svg(report.summaries));
  for (std::size_t k = 0; k < report.summaries.size(); ++k) {
    std::cout << labels[k] << " area_fraction " << report.area_fractions[k] << " peak "
              << report.summaries[k].peak_params[0] << ","
              << report.summaries[k].peak_params[1] << "\n";
  }
  for (const FunnelReport& f : report.funnels) {
    std::cout << f.source_env << "->" << f.target_env << " contained "
              << (f.peak_contained ? "yes" : "no") << " margin_deg " << f.margin_deg << "\n";
  }
  std::cout << "ordering_satisfied " << (report.ordering_satisfied ? "yes" : "no") << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hopcurve: hopping-leg reward-landscape and curriculum-learning toolkit"};
  app.require_subcommand(1);

  std::string robot_file;
  app.add_option("--robot", robot_file, "robot parameter JSON (defaults built in)")
      ->check(CLI::ExistingFile);

  // rollout
  auto* rollout_cmd = app.add_subcommand("rollout", "run one policy and print its reward");
  std::string ro_env = "original", ro_params, ro_dump;
  double ro_omega = kDefaultOmega;
  std::uint64_t ro_seed = master_seed_fallback();
  RolloutFlags ro_flags;
  rollout_cmd->add_option("--env", ro_env, "beginner|intermediate|original")
      ->capture_default_str();
  rollout_cmd->add_option("--params", ro_params, "theta0,theta1 [deg]")->required();
  rollout_cmd->add_option("--omega", ro_omega, "drive frequency [rad/s]")
      ->capture_default_str();
  rollout_cmd->add_option("--seed", ro_seed, "rollout seed");
  rollout_cmd->add_option("--dump", ro_dump, "write the trajectory CSV here");
  ro_flags.attach(rollout_cmd);

  // map
  auto* map_cmd = app.add_subcommand("map", "sample the reward landscape over the box");
  std::string map_env = "original", map_out, map_svg;
  double map_grid = 1.0, map_threshold = 0.01;
  std::uint64_t map_seed = master_seed_fallback();
  int map_jobs = 0;
  RolloutFlags map_flags;
  map_cmd->add_option("--env", map_env, "beginner|intermediate|original")
      ->capture_default_str();
  map_cmd->add_option("--grid", map_grid, "grid resolution [deg]")->capture_default_str();
  map_cmd->add_option("--seed", map_seed, "master seed");
  map_cmd->add_option("--out", map_out, "landscape CSV path")->required();
  map_cmd->add_option("--svg", map_svg, "heatmap+contour SVG path");
  map_cmd->add_option("--threshold", map_threshold, "SGS threshold [m/s]")
      ->capture_default_str();
  map_cmd->add_option("--jobs", map_jobs, "worker threads (0 = all cores)");
  map_flags.attach(map_cmd);

  // learn
  auto* learn_cmd = app.add_subcommand("learn", "finite-difference gradient ascent");
  std::string learn_env = "original", learn_init, learn_out;
  int learn_steps = 50;
  std::uint64_t learn_seed = master_seed_fallback();
  double learn_lr = 2.5, learn_delta = 1.0;
  RolloutFlags learn_flags;
  learn_cmd->add_option("--env", learn_env, "beginner|intermediate|original")
      ->capture_default_str();
  learn_cmd->add_option("--init", learn_init, "theta0,theta1 [deg]")->required();
  learn_cmd->add_option("--steps", learn_steps, "max learning steps")->capture_default_str();
  learn_cmd->add_option("--seed", learn_seed, "master seed");
  learn_cmd->add_option("--out", learn_out, "trace CSV path")->required();
  learn_cmd->add_option("--lr", learn_lr, "learning rate [deg per (m/s per deg)]")
      ->capture_default_str();
  learn_cmd->add_option("--perturbation", learn_delta, "finite-difference step [deg]")
      ->capture_default_str();
  learn_flags.attach(learn_cmd);

  // curriculum
  auto* cur_cmd = app.add_subcommand("curriculum", "learn through an environment sequence");
  std::string cur_config, cur_out;
  std::uint64_t cur_seed = 0;
  cur_cmd->add_option("--config", cur_config, "run configuration JSON")
      ->required()
      ->check(CLI::ExistingFile);
  cur_cmd->add_option("--out", cur_out, "output directory (overrides the config)");
  auto* cur_seed_opt = cur_cmd->add_option("--seed", cur_seed, "master seed override");

  // analyze
  auto* an_cmd = app.add_subcommand("analyze", "SGS + funnel report from landscape CSVs");
  std::vector<std::string> an_inputs;
  std::string an_labels, an_out = "report.json", an_svg;
  double an_threshold = 0.01;
  an_cmd->add_option("--in", an_inputs, "two or more landscape CSVs, curriculum order")
      ->required()
      ->expected(-2);
  an_cmd->add_option("--labels", an_labels, "comma-separated environment labels");
  an_cmd->add_option("--threshold", an_threshold, "SGS threshold [m/s]")
      ->capture_default_str();
  an_cmd->add_option("--out", an_out, "report JSON path")->capture_default_str();
  an_cmd->add_option("--svg", an_svg, "funnel overlay SVG path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) ? kExitConfig : kExitOk;
  }

  try {
    if (rollout_cmd->parsed()) {
      return cmd_rollout(ro_env, ro_params, ro_omega, ro_seed, ro_flags, robot_file, ro_dump);
    }
    if (map_cmd->parsed()) {
      return cmd_map(map_env, map_grid, map_seed, map_out, map_svg, map_threshold, map_flags,
                     robot_file, map_jobs);
    }
    if (learn_cmd->parsed()) {
      return cmd_learn(learn_env, learn_init, learn_steps, learn_seed, learn_out, learn_flags,
                       robot_file, learn_lr, learn_delta);
    }
    if (cur_cmd->parsed()) {
      return cmd_curriculum(cur_config, cur_out,
                            cur_seed_opt->count() > 0 ? std::optional<std::uint64_t>(cur_seed)
                                                      : std::nullopt);
    }
    if (an_cmd->parsed()) {
      return cmd_analyze(an_inputs, an_labels, an_threshold, an_out, an_svg);
    }
  } catch (const ParameterError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "simulation error: " << e.what() << "\n";
    return kExitSimFailure;
  }
  return kExitConfig;
}
