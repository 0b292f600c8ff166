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

#ifndef HOPCURVE_SVG_HPP_
#define HOPCURVE_SVG_HPP_

#include <string>
#include <vector>

#include "hopcurve/landscape.hpp"

namespace hopcurve {

// Heatmap of the reward grid with the SGS boundary drawn with a heavier
// stroke. Self-contained SVG, deterministic bytes.
std::string landscape_svg(const LandscapeGrid& grid, const SgsSummary& sgs);

// Overlay of several SGS boundaries with each peak marked by a triangle.
std::string funnel_overlay_svg(const std::vector<SgsSummary>& summaries);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace hopcurve

#endif  // HOPCURVE_SVG_HPP_
