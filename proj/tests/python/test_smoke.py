# Copyright 2026 The hopcurve Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

import math

import pytest

import hopcurve as hc


def quick_rollout_config(seed=0):
    cfg = hc.RolloutConfig()
    cfg.duration = 0.4
    cfg.settle_time = 0.1
    cfg.dt = 5e-4
    cfg.seed = seed
    return cfg


def test_defaults_match_the_hardware_geometry():
    robot = hc.RobotParams.defaults()
    assert abs(robot.rest_leg_length() - 0.223) < 1e-3
    assert hc.ankle_rotational_stiffness(6000.0, 0.015) == pytest.approx(1.35)


def test_environment_masses():
    base = hc.RobotParams.defaults()
    assert hc.make_environment(hc.EnvLevel.ORIGINAL, base).body_mass == pytest.approx(0.600)
    assert hc.make_environment(hc.EnvLevel.INTERMEDIATE, base).body_mass == pytest.approx(0.505)
    assert hc.make_environment(hc.EnvLevel.BEGINNER, base).body_mass == pytest.approx(0.415)


def test_hip_reference_peaks_at_quarter_period():
    policy = hc.PolicyParams(10.0, 20.0)
    angle, rate = hc.hip_reference(policy, 0.0)
    assert angle == pytest.approx(math.radians(10.0))
    quarter = 0.5 * math.pi / policy.omega_rad_s
    angle, rate = hc.hip_reference(policy, quarter)
    assert angle == pytest.approx(math.radians(30.0))
    assert rate == pytest.approx(0.0, abs=1e-9)


def test_rollout_is_deterministic_in_the_seed():
    env = hc.make_environment(hc.EnvLevel.BEGINNER, hc.RobotParams.defaults())
    policy = hc.PolicyParams(20.0, 30.0)
    a = hc.rollout(policy, env, quick_rollout_config(seed=7))
    b = hc.rollout(policy, env, quick_rollout_config(seed=7))
    c = hc.rollout(policy, env, quick_rollout_config(seed=8))
    assert a.reward == b.reward
    assert a.hop_count == b.hop_count
    assert (a.reward, a.displacement) != (c.reward, c.displacement) or a.failure != c.failure


def test_map_and_sgs_roundtrip():
    env = hc.make_environment(hc.EnvLevel.BEGINNER, hc.RobotParams.defaults())
    box = hc.ParameterBox()
    grid = hc.map_landscape(env, box, 10.0, quick_rollout_config(seed=3), "beginner", 2)
    assert len(grid.theta0_values) == 5
    assert len(grid.theta1_values) == 4
    rows = grid.rewards()
    assert len(rows) == 5 and len(rows[0]) == 4
    assert all(r >= 0.0 for row in rows for r in row)
    sgs = hc.extract_sgs(grid, 0.01)
    assert 0.0 <= sgs.area_fraction <= 1.0
    svg = hc.landscape_svg(grid, sgs)
    assert svg.startswith("<svg")


def test_learning_on_the_simulator_stays_in_the_box():
    env = hc.make_environment(hc.EnvLevel.BEGINNER, hc.RobotParams.defaults())
    cfg = hc.LearnerConfig()
    cfg.max_steps = 3
    cfg.seed = 5
    trace = hc.run_learning(hc.PolicyParams(18.0, 28.0), env, cfg, quick_rollout_config(5), "beginner")
    assert 1 <= len(trace.records) <= 3
    box = hc.ParameterBox()
    for rec in trace.records:
        assert box.contains(rec.params)
    assert trace.total_rollouts == 5 * len(trace.records)


def test_out_of_box_init_raises():
    env = hc.RobotParams.defaults()
    cfg = hc.LearnerConfig()
    with pytest.raises(ValueError):
        hc.run_learning(hc.PolicyParams(50.0, 20.0), env, cfg, quick_rollout_config(), "x")


def test_curriculum_smoke():
    spec = hc.CurriculumSpec()
    spec.environments = [hc.EnvLevel.BEGINNER, hc.EnvLevel.ORIGINAL]
    lc = hc.LearnerConfig()
    lc.max_steps = 2
    lc.seed = 9
    spec.learner_configs = [lc]
    spec.max_steps_per_env = 2
    spec.stall_window = 1
    spec.probe_next = False
    result = hc.run_curriculum(hc.PolicyParams(18.0, 28.0), spec, quick_rollout_config(9),
                               hc.RobotParams.defaults())
    assert len(result.traces) == 2
    assert result.total_rollouts == sum(t.total_rollouts for t in result.traces)
    assert hc.ParameterBox().contains(result.final_params)
    assert "beginner" in result.memory.to_json()
