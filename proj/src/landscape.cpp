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

#include "hopcurve/landscape.hpp"

#include <algorithm>
#include <atomic>
#include <cassert>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "hopcurve/parallel.hpp"
#include "hopcurve/rng.hpp"

namespace hopcurve {

namespace {

std::vector<double> make_axis(double lo, double hi, double resolution) {
  const auto count = static_cast<std::size_t>(std::floor((hi - lo) / resolution + 1e-9)) + 1;
  std::vector<double> values(count);
  for (std::size_t k = 0; k < count; ++k) values[k] = lo + static_cast<double>(k) * resolution;
  return values;
}

}  // namespace

LandscapeGrid map_landscape(const RobotParams& env, const ParameterBox& box,
                            double resolution_deg, const RolloutConfig& cfg,
                            const std::string& env_label, int jobs, MapStats* stats) {
  if (!(resolution_deg > 0.0)) throw ParameterError("grid resolution must be > 0");
  box.validate();
  cfg.validate();
  env.validate();

  LandscapeGrid grid;
  grid.theta0_values = make_axis(box.theta0_min_deg, box.theta0_max_deg, resolution_deg);
  grid.theta1_values = make_axis(box.theta1_min_deg, box.theta1_max_deg, resolution_deg);
  grid.env_label = env_label;
  grid.master_seed = cfg.seed;

  const std::size_t n0 = grid.n0();
  const std::size_t n1 = grid.n1();
  grid.reward.assign(n0 * n1, 0.0);
  grid.failed.assign(n0 * n1, 0);

  std::atomic<long> failed_nodes{0};
  std::atomic<long> diverged_nodes{0};
  parallel_for(n0 * n1, jobs, [&](std::size_t node) {
    const std::size_t i = node / n1;
    const std::size_t j = node % n1;
    PolicyParams p;
    p.theta0_deg = grid.theta0_values[i];
    p.theta1_deg = grid.theta1_values[j];
    RolloutConfig node_cfg = cfg;
    node_cfg.seed = mix_seed(cfg.seed, i, j);
    node_cfg.record_trajectory = false;
    const RolloutResult r = rollout(p, env, node_cfg);
    grid.reward[node] = r.reward;
    grid.failed[node] = r.failure.has_value() ? 1 : 0;
    if (r.failure) {
      failed_nodes.fetch_add(1, std::memory_order_relaxed);
      if (*r.failure == FailureKind::Diverged || *r.failure == FailureKind::KinematicError) {
        diverged_nodes.fetch_add(1, std::memory_order_relaxed);
      }
    }
  });
  if (stats) {
    stats->failed_nodes = failed_nodes.load();
    stats->diverged_nodes = diverged_nodes.load();
  }
  return grid;
}

double interpolate(const LandscapeGrid& grid, double theta0_deg, double theta1_deg) {
  const auto& xs = grid.theta0_values;
  const auto& ys = grid.theta1_values;
  if (xs.size() < 2 || ys.size() < 2) throw std::domain_error("grid too small to interpolate");
  if (theta0_deg < xs.front() || theta0_deg > xs.back() || theta1_deg < ys.front() ||
      theta1_deg > ys.back()) {
    throw std::domain_error("interpolation point outside the grid hull");
  }
  auto cell_index = [](const std::vector<double>& axis, double v) {
    auto it = std::upper_bound(axis.begin(), axis.end(), v);
    std::size_t hi = static_cast<std::size_t>(it - axis.begin());
    hi = std::clamp<std::size_t>(hi, 1, axis.size() - 1);
    return hi - 1;
  };
  const std::size_t i = cell_index(xs, theta0_deg);
  const std::size_t j = cell_index(ys, theta1_deg);
  const double u = (theta0_deg - xs[i]) / (xs[i + 1] - xs[i]);
  const double v = (theta1_deg - ys[j]) / (ys[j + 1] - ys[j]);
  const double r00 = grid.at(i, j);
  const double r10 = grid.at(i + 1, j);
  const double r01 = grid.at(i, j + 1);
  const double r11 = grid.at(i + 1, j + 1);
  return (1 - u) * (1 - v) * r00 + u * (1 - v) * r10 + (1 - u) * v * r01 + u * v * r11;
}

namespace {

// Grid edge carrying a level crossing. axis 0: (i,j)-(i+1,j); axis 1: (i,j)-(i,j+1).
struct EdgeKey {
  std::size_t i = 0;
  std::size_t j = 0;
  int axis = 0;
  auto operator<=>(const EdgeKey&) const = default;
};

struct Segment {
  EdgeKey from;
  EdgeKey to;
};

class SgsExtractor {
 public:
  SgsExtractor(const LandscapeGrid& grid, double threshold)
      : grid_(grid), threshold_(threshold) {}

  SgsSummary run() {
    SgsSummary out;
    out.threshold = threshold_;
    out.env_label = grid_.env_label;
    find_peak(out);
    build_cells();
    out.area_fraction = area_ / box_area();
    out.boundary = trace_boundaries();
    out.connected_components = count_components();
    return out;
  }

 private:
  bool inside(std::size_t i, std::size_t j) const { return grid_.at(i, j) > threshold_; }

  double box_area() const {
    const auto& xs = grid_.theta0_values;
    const auto& ys = grid_.theta1_values;
    return (xs.back() - xs.front()) * (ys.back() - ys.front());
  }

  void find_peak(SgsSummary& out) const {
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < grid_.n0(); ++i) {
      for (std::size_t j = 0; j < grid_.n1(); ++j) {
        if (grid_.at(i, j) > best) {
          best = grid_.at(i, j);
          out.peak_params = {grid_.theta0_values[i], grid_.theta1_values[j]};
        }
      }
    }
    out.peak_reward = best;
  }

  std::array<double, 2> crossing_point(const EdgeKey& e) const {
    const double v0 = grid_.at(e.i, e.j);
    const std::size_t i1 = e.axis == 0 ? e.i + 1 : e.i;
    const std::size_t j1 = e.axis == 0 ? e.j : e.j + 1;
    const double v1 = grid_.at(i1, j1);
    const double t = (threshold_ - v0) / (v1 - v0);
    const double x0 = grid_.theta0_values[e.i];
    const double y0 = grid_.theta1_values[e.j];
    const double x1 = grid_.theta0_values[i1];
    const double y1 = grid_.theta1_values[j1];
    return {x0 + (x1 - x0) * t, y0 + (y1 - y0) * t};
  }

  std::array<double, 2> node_point(std::size_t i, std::size_t j) const {
    return {grid_.theta0_values[i], grid_.theta1_values[j]};
  }

  static double polygon_area(const Polygon& poly) {
    double twice = 0.0;
    for (std::size_t k = 0; k < poly.size(); ++k) {
      const auto& a = poly[k];
      const auto& b = poly[(k + 1) % poly.size()];
      twice += a[0] * b[1] - b[0] * a[1];
    }
    return 0.5 * std::abs(twice);
  }

  // Marching squares over every cell: collects oriented contour segments
  // (region on the left) and accumulates the clipped inside-region area.
  void build_cells() {
    const std::size_t n0 = grid_.n0();
    const std::size_t n1 = grid_.n1();
    for (std::size_t i = 0; i + 1 < n0; ++i) {
      for (std::size_t j = 0; j + 1 < n1; ++j) {
        process_cell(i, j);
      }
    }
  }

  void process_cell(std::size_t i, std::size_t j) {
    const bool b00 = inside(i, j);
    const bool b10 = inside(i + 1, j);
    const bool b11 = inside(i + 1, j + 1);
    const bool b01 = inside(i, j + 1);
    const int code = (b00 ? 1 : 0) | (b10 ? 2 : 0) | (b11 ? 4 : 0) | (b01 ? 8 : 0);
    if (code == 0) return;

    const EdgeKey s{i, j, 0};
    const EdgeKey e{i + 1, j, 1};
    const EdgeKey n{i, j + 1, 0};
    const EdgeKey w{i, j, 1};

    auto emit = [&](const EdgeKey& a, const EdgeKey& b) { add_segment(a, b); };

    bool saddle_center_inside = false;
    if (code == 5 || code == 10) {
      const double center = 0.25 * (grid_.at(i, j) + grid_.at(i + 1, j) +
                                    grid_.at(i + 1, j + 1) + grid_.at(i, j + 1));
      saddle_center_inside = center > threshold_;
    }

    switch (code) {
      case 1: emit(s, w); break;
      case 2: emit(e, s); break;
      case 3: emit(e, w); break;
      case 4: emit(n, e); break;
      case 5:
        if (saddle_center_inside) {
          emit(s, e);
          emit(n, w);
        } else {
          emit(s, w);
          emit(n, e);
        }
        break;
      case 6: emit(n, s); break;
      case 7: emit(n, w); break;
      case 8: emit(w, n); break;
      case 9: emit(s, n); break;
      case 10:
        if (saddle_center_inside) {
          emit(w, s);
          emit(e, n);
        } else {
          emit(e, s);
          emit(w, n);
        }
        break;
      case 11: emit(e, n); break;
      case 12: emit(w, e); break;
      case 13: emit(s, e); break;
      case 14: emit(w, s); break;
      case 15: break;
      default: break;
    }

    area_ += cell_inside_area(i, j, code, saddle_center_inside);
  }

  double cell_inside_area(std::size_t i, std::size_t j, int code, bool saddle_center_inside) {
    const std::array<double, 2> p00 = node_point(i, j);
    const std::array<double, 2> p10 = node_point(i + 1, j);
    const std::array<double, 2> p11 = node_point(i + 1, j + 1);
    const std::array<double, 2> p01 = node_point(i, j + 1);
    if (code == 15) {
      return polygon_area({p00, p10, p11, p01});
    }
    const EdgeKey s{i, j, 0};
    const EdgeKey e{i + 1, j, 1};
    const EdgeKey n{i, j + 1, 0};
    const EdgeKey w{i, j, 1};

    // Saddle with an outside center splits into two corner triangles; the
    // counterclockwise rim walk below would bridge them.
    if (code == 5 && !saddle_center_inside) {
      return polygon_area({p00, crossing_point(s), crossing_point(w)}) +
             polygon_area({p11, crossing_point(n), crossing_point(e)});
    }
    if (code == 10 && !saddle_center_inside) {
      return polygon_area({p10, crossing_point(e), crossing_point(s)}) +
             polygon_area({p01, crossing_point(w), crossing_point(n)});
    }

    Polygon poly;
    auto corner = [&](bool in, const std::array<double, 2>& pt) {
      if (in) poly.push_back(pt);
    };
    auto edge = [&](const EdgeKey& k, bool a_in, bool b_in) {
      if (a_in != b_in) poly.push_back(crossing_point(k));
    };
    const bool b00 = (code & 1) != 0;
    const bool b10 = (code & 2) != 0;
    const bool b11 = (code & 4) != 0;
    const bool b01 = (code & 8) != 0;
    corner(b00, p00);
    edge(s, b00, b10);
    corner(b10, p10);
    edge(e, b10, b11);
    corner(b11, p11);
    edge(n, b11, b01);
    corner(b01, p01);
    edge(w, b01, b00);
    return poly.size() >= 3 ? polygon_area(poly) : 0.0;
  }

  void add_segment(const EdgeKey& from, const EdgeKey& to) {
    assert(!segments_by_start_.count(from));
    segments_by_start_[from] = to;
  }

  bool is_rim_edge(const EdgeKey& k) const {
    if (k.axis == 0) return k.j == 0 || k.j + 1 == grid_.n1();
    return k.i == 0 || k.i + 1 == grid_.n0();
  }

  // Rim of the hull as a counterclockwise cycle of nodes and crossings.
  struct RimItem {
    bool is_crossing = false;
    EdgeKey edge;     // when crossing
    std::size_t i = 0, j = 0;  // when node
  };

  std::vector<RimItem> build_rim() const {
    const std::size_t n0 = grid_.n0();
    const std::size_t n1 = grid_.n1();
    std::vector<RimItem> rim;
    auto node = [&](std::size_t i, std::size_t j) {
      rim.push_back({false, {}, i, j});
    };
    auto crossing = [&](EdgeKey k) {
      if (segments_by_start_.count(k) || segment_ends_.count(k)) {
        rim.push_back({true, k, 0, 0});
      }
    };
    for (std::size_t i = 0; i + 1 < n0; ++i) {
      node(i, 0);
      crossing({i, 0, 0});
    }
    for (std::size_t j = 0; j + 1 < n1; ++j) {
      node(n0 - 1, j);
      crossing({n0 - 1, j, 1});
    }
    for (std::size_t i = n0 - 1; i > 0; --i) {
      node(i, n1 - 1);
      crossing({i - 1, n1 - 1, 0});
    }
    for (std::size_t j = n1 - 1; j > 0; --j) {
      node(0, j);
      crossing({0, j - 1, 1});
    }
    return rim;
  }

  std::vector<Polygon> trace_boundaries() {
    segment_ends_.clear();
    for (const auto& [from, to] : segments_by_start_) segment_ends_.insert(to);

    std::vector<Polygon> polygons;
    std::map<EdgeKey, bool> used;  // segment identified by its start key

    // Open chains: start at rim entries, follow to the rim exit.
    struct Chain {
      Polygon points;
      EdgeKey entry;
      EdgeKey exit;
      bool spliced = false;
    };
    std::vector<Chain> chains;
    std::map<EdgeKey, std::size_t> chain_by_entry;

    for (const auto& [start, first_to] : segments_by_start_) {
      if (!is_rim_edge(start) || segment_ends_.count(start)) continue;
      // A rim crossing that no segment ends at begins an open chain.
      Chain chain;
      chain.entry = start;
      EdgeKey cur = start;
      chain.points.push_back(crossing_point(cur));
      while (true) {
        auto it = segments_by_start_.find(cur);
        if (it == segments_by_start_.end()) break;
        used[cur] = true;
        cur = it->second;
        chain.points.push_back(crossing_point(cur));
      }
      chain.exit = cur;
      chain_by_entry[chain.entry] = chains.size();
      chains.push_back(std::move(chain));
    }

    // Interior closed loops.
    for (const auto& [start, to] : segments_by_start_) {
      if (used.count(start)) continue;
      Polygon poly;
      EdgeKey cur = start;
      while (true) {
        used[cur] = true;
        poly.push_back(crossing_point(cur));
        auto it = segments_by_start_.find(cur);
        assert(it != segments_by_start_.end());
        cur = it->second;
        if (cur == start) break;
      }
      if (poly.size() >= 3) polygons.push_back(std::move(poly));
    }

    // Close the open chains along the rim, walking counterclockwise through
    // inside nodes from each exit to the next entry.
    if (!chains.empty()) {
      const std::vector<RimItem> rim = build_rim();
      std::map<EdgeKey, std::size_t> rim_pos;
      for (std::size_t k = 0; k < rim.size(); ++k) {
        if (rim[k].is_crossing) rim_pos[rim[k].edge] = k;
      }
      for (std::size_t c = 0; c < chains.size(); ++c) {
        if (chains[c].spliced) continue;
        Polygon poly = chains[c].points;
        chains[c].spliced = true;
        EdgeKey exit = chains[c].exit;
        while (true) {
          auto pos_it = rim_pos.find(exit);
          if (pos_it == rim_pos.end()) break;  // degenerate; drop gracefully
          std::size_t k = pos_it->second;
          EdgeKey next_entry;
          bool found = false;
          for (std::size_t step = 1; step <= rim.size(); ++step) {
            const RimItem& item = rim[(k + step) % rim.size()];
            if (item.is_crossing) {
              next_entry = item.edge;
              found = true;
              break;
            }
            poly.push_back(node_point(item.i, item.j));
          }
          if (!found) break;
          if (next_entry == chains[c].entry) break;  // loop closed
          auto ch_it = chain_by_entry.find(next_entry);
          if (ch_it == chain_by_entry.end()) break;  // degenerate pairing
          Chain& next_chain = chains[ch_it->second];
          if (next_chain.spliced) break;
          next_chain.spliced = true;
          poly.insert(poly.end(), next_chain.points.begin(), next_chain.points.end());
          exit = next_chain.exit;
        }
        if (poly.size() >= 3) polygons.push_back(std::move(poly));
      }
    } else if (segments_by_start_.empty()) {
      // No contour at all: either everything or nothing clears the threshold.
      bool any_inside = false;
      for (std::size_t i = 0; i < grid_.n0() && !any_inside; ++i) {
        for (std::size_t j = 0; j < grid_.n1() && !any_inside; ++j) {
          any_inside = inside(i, j);
        }
      }
      if (any_inside) {
        const auto& xs = grid_.theta0_values;
        const auto& ys = grid_.theta1_values;
        polygons.push_back(Polygon{{xs.front(), ys.front()},
                                   {xs.back(), ys.front()},
                                   {xs.back(), ys.back()},
                                   {xs.front(), ys.back()}});
      }
    }
    return polygons;
  }

  int count_components() const {
    const std::size_t n0 = grid_.n0();
    const std::size_t n1 = grid_.n1();
    std::vector<std::uint8_t> seen(n0 * n1, 0);
    int components = 0;
    std::vector<std::size_t> stack;
    for (std::size_t start = 0; start < n0 * n1; ++start) {
      if (seen[start] || !(grid_.reward[start] > threshold_)) continue;
      ++components;
      stack.push_back(start);
      seen[start] = 1;
      while (!stack.empty()) {
        const std::size_t node = stack.back();
        stack.pop_back();
        const std::size_t i = node / n1;
        const std::size_t j = node % n1;
        auto visit = [&](std::size_t ni, std::size_t nj) {
          const std::size_t idx = ni * n1 + nj;
          if (!seen[idx] && grid_.reward[idx] > threshold_) {
            seen[idx] = 1;
            stack.push_back(idx);
          }
        };
        if (i > 0) visit(i - 1, j);
        if (i + 1 < n0) visit(i + 1, j);
        if (j > 0) visit(i, j - 1);
        if (j + 1 < n1) visit(i, j + 1);
      }
    }
    return components;
  }

  const LandscapeGrid& grid_;
  double threshold_;
  double area_ = 0.0;
  std::map<EdgeKey, EdgeKey> segments_by_start_;
  std::set<EdgeKey> segment_ends_;
};

}  // namespace

SgsSummary extract_sgs(const LandscapeGrid& grid, double threshold) {
  if (threshold < 0.0) throw ParameterError("SGS threshold must be >= 0");
  if (grid.n0() < 2 || grid.n1() < 2 || grid.reward.size() != grid.n0() * grid.n1()) {
    throw ParameterError("landscape grid is malformed or too small");
  }
  return SgsExtractor(grid, threshold).run();
}

LandscapeGrid smooth3x3(const LandscapeGrid& grid) {
  LandscapeGrid out = grid;
  const std::size_t n0 = grid.n0();
  const std::size_t n1 = grid.n1();
  for (std::size_t i = 0; i < n0; ++i) {
    for (std::size_t j = 0; j < n1; ++j) {
      double sum = 0.0;
      int count = 0;
      for (int di = -1; di <= 1; ++di) {
        for (int dj = -1; dj <= 1; ++dj) {
          const auto ni = static_cast<std::ptrdiff_t>(i) + di;
          const auto nj = static_cast<std::ptrdiff_t>(j) + dj;
          if (ni < 0 || nj < 0 || ni >= static_cast<std::ptrdiff_t>(n0) ||
              nj >= static_cast<std::ptrdiff_t>(n1)) {
            continue;
          }
          sum += grid.at(static_cast<std::size_t>(ni), static_cast<std::size_t>(nj));
          ++count;
        }
      }
      out.reward[i * n1 + j] = sum / count;
    }
  }
  std::fill(out.failed.begin(), out.failed.end(), 0);
  return out;
}

bool point_in_polygons(const std::vector<Polygon>& polygons, double x, double y) {
  bool inside = false;
  for (const Polygon& poly : polygons) {
    const std::size_t n = poly.size();
    for (std::size_t k = 0, m = n - 1; k < n; m = k++) {
      const double xk = poly[k][0], yk = poly[k][1];
      const double xm = poly[m][0], ym = poly[m][1];
      if ((yk > y) != (ym > y) && x < (xm - xk) * (y - yk) / (ym - yk) + xk) {
        inside = !inside;
      }
    }
  }
  return inside;
}

double distance_to_polygons(const std::vector<Polygon>& polygons, double x, double y) {
  double best = std::numeric_limits<double>::infinity();
  for (const Polygon& poly : polygons) {
    const std::size_t n = poly.size();
    for (std::size_t k = 0, m = n - 1; k < n; m = k++) {
      const double ax = poly[m][0], ay = poly[m][1];
      const double bx = poly[k][0], by = poly[k][1];
      const double dx = bx - ax, dy = by - ay;
      const double len2 = dx * dx + dy * dy;
      double t = len2 > 0.0 ? ((x - ax) * dx + (y - ay) * dy) / len2 : 0.0;
      t = std::clamp(t, 0.0, 1.0);
      const double px = ax + t * dx - x;
      const double py = ay + t * dy - y;
      best = std::min(best, std::hypot(px, py));
    }
  }
  return best;
}

FunnelReport funnel_check(const SgsSummary& source, const SgsSummary& target) {
  FunnelReport report;
  report.source_env = source.env_label;
  report.target_env = target.env_label;
  const double x = source.peak_params[0];
  const double y = source.peak_params[1];
  if (target.boundary.empty()) {
    report.peak_contained = false;
    report.margin_deg = -std::numeric_limits<double>::infinity();
    return report;
  }
  report.peak_contained = point_in_polygons(target.boundary, x, y);
  const double dist = distance_to_polygons(target.boundary, x, y);
  report.margin_deg = report.peak_contained ? dist : -dist;
  return report;
}

void write_landscape_csv(std::ostream& out, const LandscapeGrid& grid) {
  out << "theta0_deg,theta1_deg,reward_mps,failed\n";
  char line[128];
  for (std::size_t i = 0; i < grid.n0(); ++i) {
    for (std::size_t j = 0; j < grid.n1(); ++j) {
      std::snprintf(line, sizeof(line), "%.6g,%.6g,%.6g,%d\n", grid.theta0_values[i],
                    grid.theta1_values[j], grid.at(i, j), grid.failed_at(i, j) ? 1 : 0);
      out << line;
    }
  }
}

LandscapeGrid read_landscape_csv(std::istream& in, const std::string& env_label) {
  std::string header;
  if (!std::getline(in, header) || header != "theta0_deg,theta1_deg,reward_mps,failed") {
    throw ParameterError("landscape CSV: bad or missing header");
  }
  struct Row {
    double t0, t1, reward;
    int failed;
  };
  std::vector<Row> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    Row row;
    char* end = nullptr;
    const char* s = line.c_str();
    row.t0 = std::strtod(s, &end);
    if (end == s || *end != ',') throw ParameterError("landscape CSV: bad row '" + line + "'");
    s = end + 1;
    row.t1 = std::strtod(s, &end);
    if (end == s || *end != ',') throw ParameterError("landscape CSV: bad row '" + line + "'");
    s = end + 1;
    row.reward = std::strtod(s, &end);
    if (end == s || *end != ',') throw ParameterError("landscape CSV: bad row '" + line + "'");
    s = end + 1;
    row.failed = std::atoi(s);
    rows.push_back(row);
  }
  LandscapeGrid grid;
  grid.env_label = env_label;
  for (const Row& r : rows) {
    if (grid.theta0_values.empty() || grid.theta0_values.back() < r.t0) {
      grid.theta0_values.push_back(r.t0);
    }
  }
  for (const Row& r : rows) {
    if (r.t0 != rows.front().t0) break;
    grid.theta1_values.push_back(r.t1);
  }
  const std::size_t n0 = grid.n0();
  const std::size_t n1 = grid.n1();
  if (n0 * n1 != rows.size()) {
    throw ParameterError("landscape CSV: rows do not form a row-major grid");
  }
  grid.reward.resize(rows.size());
  grid.failed.resize(rows.size());
  for (std::size_t k = 0; k < rows.size(); ++k) {
    const std::size_t i = k / n1;
    const std::size_t j = k % n1;
    if (rows[k].t0 != grid.theta0_values[i] || rows[k].t1 != grid.theta1_values[j]) {
      throw ParameterError("landscape CSV: rows out of row-major order");
    }
    grid.reward[k] = rows[k].reward;
    grid.failed[k] = rows[k].failed ? 1 : 0;
  }
  return grid;
}

void save_landscape_csv(const std::string& path, const LandscapeGrid& grid) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParameterError("cannot open for writing: " + path);
  write_landscape_csv(out, grid);
}

LandscapeGrid load_landscape_csv(const std::string& path, const std::string& env_label) {
  std::ifstream in(path);
  if (!in) throw ParameterError("cannot open landscape CSV: " + path);
  return read_landscape_csv(in, env_label);
}

std::string sgs_to_json_text(const SgsSummary& s) {
  nlohmann::json doc;
  doc["threshold"] = s.threshold;
  doc["area_fraction"] = s.area_fraction;
  doc["peak"] = {s.peak_params[0], s.peak_params[1]};
  doc["peak_reward"] = s.peak_reward;
  doc["components"] = s.connected_components;
  auto boundary = nlohmann::json::array();
  for (const Polygon& poly : s.boundary) {
    auto jp = nlohmann::json::array();
    for (const auto& pt : poly) jp.push_back({pt[0], pt[1]});
    boundary.push_back(jp);
  }
  doc["boundary"] = boundary;
  doc["env"] = s.env_label;
  return doc.dump(2) + "\n";
}

}  // namespace hopcurve
