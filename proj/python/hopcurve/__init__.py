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

"""Planar hopping-leg simulator with reward-landscape cartography and
finite-difference curriculum learning."""

from hopcurve._hopcurve import (  # noqa: F401
    DEFAULT_OMEGA,
    CriteriaReport,
    CurriculumResult,
    CurriculumSpec,
    EnvLevel,
    FailureKind,
    FunnelReport,
    KinematicError,
    LandscapeGrid,
    LearnerConfig,
    LearningTrace,
    ParameterBox,
    ParameterError,
    PolicyMemory,
    PolicyParams,
    RobotParams,
    RolloutConfig,
    RolloutResult,
    SgsSummary,
    TraceRecord,
    ankle_rotational_stiffness,
    clip_to_box,
    criteria_report,
    estimate_gradient,
    extract_sgs,
    funnel_check,
    funnel_overlay_svg,
    hip_reference,
    interpolate,
    landscape_svg,
    make_environment,
    map_landscape,
    rollout,
    run_curriculum,
    run_learning,
    smooth3x3,
    __version__,
)

__all__ = [name for name in dir() if not name.startswith("_")] + ["__version__"]
