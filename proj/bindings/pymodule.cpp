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

#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "hopcurve/config.hpp"
#include "hopcurve/curriculum.hpp"
#include "hopcurve/landscape.hpp"
#include "hopcurve/learner.hpp"
#include "hopcurve/svg.hpp"

namespace py = pybind11;
using namespace hopcurve;

PYBIND11_MODULE(_hopcurve, m) {
  m.doc() = "Planar hopping-leg simulator, reward-landscape cartography and "
            "finite-difference curriculum learning.";

  py::register_exception<ParameterError>(m, "ParameterError", PyExc_ValueError);
  py::register_exception<KinematicError>(m, "KinematicError", PyExc_ValueError);

  py::class_<RobotParams>(m, "RobotParams")
      .def(py::init<>())
      .def_readwrite("body_mass", &RobotParams::body_mass)
      .def_readwrite("gravity", &RobotParams::gravity)
      .def_readwrite("upper_len", &RobotParams::upper_len)
      .def_readwrite("lower_len", &RobotParams::lower_len)
      .def_readwrite("ankle_rest_angle", &RobotParams::ankle_rest_angle)
      .def_readwrite("ankle_stiffness_rot", &RobotParams::ankle_stiffness_rot)
      .def_readwrite("ankle_preload_torque", &RobotParams::ankle_preload_torque)
      .def_readwrite("hardstop_stiffness", &RobotParams::hardstop_stiffness)
      .def_readwrite("hardstop_damping", &RobotParams::hardstop_damping)
      .def_readwrite("hip_kp", &RobotParams::hip_kp)
      .def_readwrite("hip_kd", &RobotParams::hip_kd)
      .def_readwrite("hip_torque_max", &RobotParams::hip_torque_max)
      .def_readwrite("hip_angle_min", &RobotParams::hip_angle_min)
      .def_readwrite("hip_angle_max", &RobotParams::hip_angle_max)
      .def_readwrite("ground_level", &RobotParams::ground_level)
      .def_readwrite("min_body_height", &RobotParams::min_body_height)
      .def_readwrite("boom_radius", &RobotParams::boom_radius)
      .def_readwrite("actuation_noise_sigma", &RobotParams::actuation_noise_sigma)
      .def_static("defaults", &RobotParams::defaults)
      .def("validate", &RobotParams::validate)
      .def("rest_leg_length", &RobotParams::rest_leg_length)
      .def("to_json", &robot_params_to_json_text)
      .def_static("from_json", &robot_params_from_json_text);

  m.def("ankle_rotational_stiffness", &ankle_rotational_stiffness,
        py::arg("linear_stiffness"), py::arg("cam_radius"));

  py::class_<PolicyParams>(m, "PolicyParams")
      .def(py::init<>())
      .def(py::init([](double theta0, double theta1, double omega) {
             return PolicyParams{theta0, theta1, omega};
           }),
           py::arg("theta0_deg"), py::arg("theta1_deg"), py::arg("omega_rad_s") = kDefaultOmega)
      .def_readwrite("theta0_deg", &PolicyParams::theta0_deg)
      .def_readwrite("theta1_deg", &PolicyParams::theta1_deg)
      .def_readwrite("omega_rad_s", &PolicyParams::omega_rad_s)
      .def("__repr__", [](const PolicyParams& p) {
        std::ostringstream out;
        out << "PolicyParams(theta0_deg=" << p.theta0_deg << ", theta1_deg=" << p.theta1_deg
            << ", omega_rad_s=" << p.omega_rad_s << ")";
        return out.str();
      });

  py::class_<ParameterBox>(m, "ParameterBox")
      .def(py::init<>())
      .def_readwrite("theta0_min_deg", &ParameterBox::theta0_min_deg)
      .def_readwrite("theta0_max_deg", &ParameterBox::theta0_max_deg)
      .def_readwrite("theta1_min_deg", &ParameterBox::theta1_min_deg)
      .def_readwrite("theta1_max_deg", &ParameterBox::theta1_max_deg)
      .def("contains", &ParameterBox::contains);

  m.def("hip_reference",
        [](const PolicyParams& p, double t) {
          const HipReference ref = hip_reference(p, t);
          return py::make_tuple(ref.angle, ref.rate);
        },
        py::arg("policy"), py::arg("t"), "Reference hip angle and rate [rad, rad/s]");
  m.def("clip_to_box", &clip_to_box, py::arg("policy"), py::arg("box"));

  py::enum_<EnvLevel>(m, "EnvLevel")
      .value("BEGINNER", EnvLevel::Beginner)
      .value("INTERMEDIATE", EnvLevel::Intermediate)
      .value("ORIGINAL", EnvLevel::Original);
  m.def("make_environment", &make_environment, py::arg("level"), py::arg("base"));

  py::enum_<FailureKind>(m, "FailureKind")
      .value("ANKLE_STRIKE", FailureKind::AnkleStrike)
      .value("BODY_GROUND", FailureKind::BodyGround)
      .value("HIP_RANGE_EXCEEDED", FailureKind::HipRangeExceeded)
      .value("KINEMATIC_ERROR", FailureKind::KinematicError)
      .value("DIVERGED", FailureKind::Diverged);

  py::class_<RolloutConfig>(m, "RolloutConfig")
      .def(py::init<>())
      .def_readwrite("duration", &RolloutConfig::duration)
      .def_readwrite("dt", &RolloutConfig::dt)
      .def_readwrite("settle_time", &RolloutConfig::settle_time)
      .def_readwrite("seed", &RolloutConfig::seed)
      .def_readwrite("record_trajectory", &RolloutConfig::record_trajectory)
      .def_readwrite("trajectory_sample_stride", &RolloutConfig::trajectory_sample_stride);

  py::class_<RolloutResult>(m, "RolloutResult")
      .def_readonly("reward", &RolloutResult::reward)
      .def_readonly("failure", &RolloutResult::failure)
      .def_readonly("displacement", &RolloutResult::displacement)
      .def_readonly("duration", &RolloutResult::duration)
      .def_readonly("hop_count", &RolloutResult::hop_count)
      .def_readonly("peak_height", &RolloutResult::peak_height);

  m.def("rollout", &rollout, py::arg("policy"), py::arg("env"), py::arg("config"),
        py::call_guard<py::gil_scoped_release>(),
        "One fixed-duration episode; reward is average forward speed, 0 on failure.");

  py::class_<LandscapeGrid>(m, "LandscapeGrid")
      .def_readonly("theta0_values", &LandscapeGrid::theta0_values)
      .def_readonly("theta1_values", &LandscapeGrid::theta1_values)
      .def_readonly("env_label", &LandscapeGrid::env_label)
      .def_readonly("master_seed", &LandscapeGrid::master_seed)
      .def("reward_at", &LandscapeGrid::at, py::arg("i0"), py::arg("i1"))
      .def("failed_at", &LandscapeGrid::failed_at, py::arg("i0"), py::arg("i1"))
      .def("rewards",
           [](const LandscapeGrid& grid) {
             std::vector<std::vector<double>> rows(grid.n0());
             for (std::size_t i = 0; i < grid.n0(); ++i) {
               rows[i].assign(grid.reward.begin() + i * grid.n1(),
                              grid.reward.begin() + (i + 1) * grid.n1());
             }
             return rows;
           },
           "Reward matrix as nested lists, row = theta0 index");

  m.def("map_landscape",
        [](const RobotParams& env, const ParameterBox& box, double resolution_deg,
           const RolloutConfig& cfg, const std::string& env_label, int jobs) {
          return map_landscape(env, box, resolution_deg, cfg, env_label, jobs);
        },
        py::arg("env"), py::arg("box"), py::arg("resolution_deg"), py::arg("config"),
        py::arg("env_label") = "", py::arg("jobs") = 0,
        py::call_guard<py::gil_scoped_release>());
  m.def("interpolate", &interpolate, py::arg("grid"), py::arg("theta0_deg"),
        py::arg("theta1_deg"));

  py::class_<SgsSummary>(m, "SgsSummary")
      .def_readonly("threshold", &SgsSummary::threshold)
      .def_readonly("area_fraction", &SgsSummary::area_fraction)
      .def_readonly("boundary", &SgsSummary::boundary)
      .def_readonly("peak_params", &SgsSummary::peak_params)
      .def_readonly("peak_reward", &SgsSummary::peak_reward)
      .def_readonly("connected_components", &SgsSummary::connected_components)
      .def_readonly("env_label", &SgsSummary::env_label)
      .def("to_json", &sgs_to_json_text);

  m.def("extract_sgs", &extract_sgs, py::arg("grid"), py::arg("threshold"));
  m.def("smooth3x3", &smooth3x3, py::arg("grid"));

  py::class_<FunnelReport>(m, "FunnelReport")
      .def_readonly("source_env", &FunnelReport::source_env)
      .def_readonly("target_env", &FunnelReport::target_env)
      .def_readonly("peak_contained", &FunnelReport::peak_contained)
      .def_readonly("margin_deg", &FunnelReport::margin_deg);

  m.def("funnel_check", &funnel_check, py::arg("source"), py::arg("target"));

  py::class_<LearnerConfig>(m, "LearnerConfig")
      .def(py::init<>())
      .def_readwrite("perturbation_deg", &LearnerConfig::perturbation_deg)
      .def_readwrite("learning_rate", &LearnerConfig::learning_rate)
      .def_readwrite("max_steps", &LearnerConfig::max_steps)
      .def_readwrite("rollouts_per_eval", &LearnerConfig::rollouts_per_eval)
      .def_readwrite("min_gradient_norm", &LearnerConfig::min_gradient_norm)
      .def_readwrite("random_step_size_deg", &LearnerConfig::random_step_size_deg)
      .def_readwrite("seed", &LearnerConfig::seed)
      .def_readwrite("box", &LearnerConfig::box);

  py::class_<TraceRecord>(m, "TraceRecord")
      .def_readonly("step", &TraceRecord::step)
      .def_readonly("params", &TraceRecord::params)
      .def_readonly("reward", &TraceRecord::reward)
      .def_readonly("gradient", &TraceRecord::gradient)
      .def_readonly("env_label", &TraceRecord::env_label)
      .def_readonly("rollout_count", &TraceRecord::rollout_count);

  py::class_<LearningTrace>(m, "LearningTrace")
      .def_readonly("records", &LearningTrace::records)
      .def_readonly("final_params", &LearningTrace::final_params)
      .def_readonly("total_rollouts", &LearningTrace::total_rollouts)
      .def_readonly("env_label", &LearningTrace::env_label);

  m.def("estimate_gradient",
        [](const PolicyParams& p, const RobotParams& env, const LearnerConfig& cfg,
           const RolloutConfig& rollout_cfg) {
          const GradientEstimate est = estimate_gradient(p, env, cfg, rollout_cfg);
          return py::make_tuple(est.gradient, est.center_reward, est.rollouts_used);
        },
        py::arg("policy"), py::arg("env"), py::arg("learner_config"),
        py::arg("rollout_config"), py::call_guard<py::gil_scoped_release>());

  m.def("run_learning",
        [](const PolicyParams& init, const RobotParams& env, const LearnerConfig& cfg,
           const RolloutConfig& rollout_cfg, const std::string& env_label) {
          return run_learning(init, env, cfg, rollout_cfg, env_label);
        },
        py::arg("init"), py::arg("env"), py::arg("learner_config"), py::arg("rollout_config"),
        py::arg("env_label") = "", py::call_guard<py::gil_scoped_release>());

  py::class_<CurriculumSpec>(m, "CurriculumSpec")
      .def(py::init<>())
      .def_readwrite("environments", &CurriculumSpec::environments)
      .def_readwrite("learner_configs", &CurriculumSpec::learner_configs)
      .def_readwrite("stall_window", &CurriculumSpec::stall_window)
      .def_readwrite("stall_tolerance", &CurriculumSpec::stall_tolerance)
      .def_readwrite("max_steps_per_env", &CurriculumSpec::max_steps_per_env)
      .def_readwrite("probe_next", &CurriculumSpec::probe_next);

  py::class_<PolicyMemory>(m, "PolicyMemory")
      .def("to_json", &memory_to_json_text)
      .def("lookup", [](const PolicyMemory& memory, const std::string& label) -> py::object {
        const PolicyMemory::Entry* entry = memory.lookup(label);
        if (!entry) return py::none();
        return py::make_tuple(entry->params, entry->reward);
      });

  py::class_<CurriculumResult>(m, "CurriculumResult")
      .def_readonly("traces", &CurriculumResult::traces)
      .def_readonly("memory", &CurriculumResult::memory)
      .def_readonly("final_params", &CurriculumResult::final_params)
      .def_readonly("probe_rollouts", &CurriculumResult::probe_rollouts)
      .def_readonly("total_rollouts", &CurriculumResult::total_rollouts);

  m.def("run_curriculum", &run_curriculum, py::arg("init"), py::arg("spec"),
        py::arg("rollout_config"), py::arg("base"),
        py::call_guard<py::gil_scoped_release>());

  py::class_<CriteriaReport>(m, "CriteriaReport")
      .def_readonly("threshold", &CriteriaReport::threshold)
      .def_readonly("summaries", &CriteriaReport::summaries)
      .def_readonly("funnels", &CriteriaReport::funnels)
      .def_readonly("area_fractions", &CriteriaReport::area_fractions)
      .def_readonly("ordering_satisfied", &CriteriaReport::ordering_satisfied)
      .def("to_json", &criteria_report_to_json_text);

  m.def("criteria_report", &criteria_report, py::arg("landscapes"), py::arg("threshold"));

  m.def("landscape_svg", &landscape_svg, py::arg("grid"), py::arg("sgs"));
  m.def("funnel_overlay_svg", &funnel_overlay_svg, py::arg("summaries"));

  m.attr("DEFAULT_OMEGA") = kDefaultOmega;
  m.attr("__version__") = "0.1.0";
}
