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

#include "hopcurve/policy.hpp"

#include <algorithm>
#include <cmath>

#include <json.hpp>

#include "hopcurve/model.hpp"

namespace hopcurve {

void ParameterBox::validate() const {
  if (!(theta0_min_deg < theta0_max_deg) || !(theta1_min_deg < theta1_max_deg)) {
    throw ParameterError("parameter box must have min < max on both axes");
  }
}

HipReference hip_reference(const PolicyParams& p, double t) {
  const double phase = p.omega_rad_s * t;
  HipReference ref;
  ref.angle = deg2rad(p.theta0_deg + p.theta1_deg * std::sin(phase));
  ref.rate = deg2rad(p.theta1_deg) * p.omega_rad_s * std::cos(phase);
  return ref;
}

PolicyParams clip_to_box(PolicyParams p, const ParameterBox& box) {
  p.theta0_deg = std::clamp(p.theta0_deg, box.theta0_min_deg, box.theta0_max_deg);
  p.theta1_deg = std::clamp(p.theta1_deg, box.theta1_min_deg, box.theta1_max_deg);
  return p;
}

std::string policy_to_json_text(const PolicyParams& p) {
  nlohmann::json doc;
  doc["theta0_deg"] = p.theta0_deg;
  doc["theta1_deg"] = p.theta1_deg;
  doc["omega_rad_s"] = p.omega_rad_s;
  return doc.dump(2) + "\n";
}

PolicyParams policy_from_json_text(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParameterError(std::string("policy: ") + e.what());
  }
  PolicyParams p;
  for (const auto& [key, value] : doc.items()) {
    if (key == "theta0_deg") {
      p.theta0_deg = value.get<double>();
    } else if (key == "theta1_deg") {
      p.theta1_deg = value.get<double>();
    } else if (key == "omega_rad_s") {
      p.omega_rad_s = value.get<double>();
    } else {
      throw ParameterError("unknown policy key '" + key + "'");
    }
  }
  return p;
}

}  // namespace hopcurve
