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

#ifndef HOPCURVE_LANDSCAPE_HPP_
#define HOPCURVE_LANDSCAPE_HPP_

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "hopcurve/policy.hpp"
#include "hopcurve/sim.hpp"

namespace hopcurve {

using Polygon = std::vector<std::array<double, 2>>;  // implicitly closed, deg

// Rectangular reward sampling of the (theta0, theta1) box for one
// environment. Row-major storage: index = i0 * theta1_values.size() + i1.
struct LandscapeGrid {
  std::vector<double> theta0_values;  // deg, sorted ascending
  std::vector<double> theta1_values;  // deg, sorted ascending
  std::vector<double> reward;         // m/s
  std::vector<std::uint8_t> failed;
  std::string env_label;
  std::uint64_t master_seed = 0;

  std::size_t n0() const { return theta0_values.size(); }
  std::size_t n1() const { return theta1_values.size(); }
  double at(std::size_t i0, std::size_t i1) const { return reward[i0 * n1() + i1]; }
  bool failed_at(std::size_t i0, std::size_t i1) const {
    return failed[i0 * n1() + i1] != 0;
  }
};

// Salient gradient set of one landscape: the region of parameter space whose
// reward clears the threshold, i.e. the set a learner must sample from to
// see a gradient.
struct SgsSummary {
  double threshold = 0.0;                 // m/s
  double area_fraction = 0.0;             // in [0, 1], relative to the grid hull
  std::vector<Polygon> boundary;          // level-set contours, closed along the hull rim
  std::array<double, 2> peak_params{};    // deg, argmax node (lowest theta0 then theta1 on ties)
  double peak_reward = 0.0;               // m/s
  int connected_components = 0;           // 4-connected components of above-threshold nodes
  std::string env_label;
};

struct FunnelReport {
  std::string source_env;
  std::string target_env;
  bool peak_contained = false;
  double margin_deg = 0.0;  // signed distance from source peak to target boundary, >0 inside
};

struct MapStats {
  long failed_nodes = 0;
  long diverged_nodes = 0;  // integrator left its valid domain (diverged/kinematic)
};

// One seeded rollout per grid node; node seeds derive from the master seed
// and the node index, so the grid is identical for any worker count.
// Individual rollout failures are recorded in the grid, never fatal.
LandscapeGrid map_landscape(const RobotParams& env, const ParameterBox& box,
                            double resolution_deg, const RolloutConfig& cfg,
                            const std::string& env_label = "", int jobs = 1,
                            MapStats* stats = nullptr);

// Bilinear interpolation on the enclosing cell. Throws std::domain_error
// outside the grid hull.
double interpolate(const LandscapeGrid& grid, double theta0_deg, double theta1_deg);

// Level-set extraction at the threshold: marching squares with linear edge
// crossings on the bilinear surface; contours that run off the grid are
// closed along the hull rim. Area is accumulated cell by cell from the
// clipped polygons.
SgsSummary extract_sgs(const LandscapeGrid& grid, double threshold);

// 3x3 mean filter (edge-normalized); used before peak/component checks on
// noisy grids. Failure flags are dropped in the result.
LandscapeGrid smooth3x3(const LandscapeGrid& grid);

// Even-odd containment of the source peak in the target boundary, with the
// signed Euclidean distance to the nearest boundary segment.
FunnelReport funnel_check(const SgsSummary& source, const SgsSummary& target);

bool point_in_polygons(const std::vector<Polygon>& polygons, double x, double y);
// Unsigned distance to the nearest polygon segment; +inf for no polygons.
double distance_to_polygons(const std::vector<Polygon>& polygons, double x, double y);

// Header: theta0_deg,theta1_deg,reward_mps,failed — row-major over theta0
// then theta1, rewards with 6 significant digits.
void write_landscape_csv(std::ostream& out, const LandscapeGrid& grid);
LandscapeGrid read_landscape_csv(std::istream& in, const std::string& env_label = "");
void save_landscape_csv(const std::string& path, const LandscapeGrid& grid);
LandscapeGrid load_landscape_csv(const std::string& path, const std::string& env_label = "");

// {threshold, area_fraction, peak, peak_reward, components, boundary, env}
std::string sgs_to_json_text(const SgsSummary& s);

}  // namespace hopcurve

#endif  // HOPCURVE_LANDSCAPE_HPP_
