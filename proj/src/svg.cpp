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

#include "hopcurve/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "hopcurve/model.hpp"

namespace hopcurve {

namespace {

constexpr double kPlotW = 640.0;
constexpr double kPlotH = 560.0;
constexpr double kMarginL = 64.0;
constexpr double kMarginB = 48.0;
constexpr double kMarginT = 32.0;
constexpr double kMarginR = 24.0;

struct Frame {
  double x0, x1, y0, y1;  // data range
  double px(double x) const {
    return kMarginL + (x - x0) / (x1 - x0) * (kPlotW - kMarginL - kMarginR);
  }
  double py(double y) const {
    return kPlotH - kMarginB - (y - y0) / (y1 - y0) * (kPlotH - kMarginB - kMarginT);
  }
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

// Compact viridis-like ramp.
std::string heat_color(double t) {
  static const double stops[][3] = {
      {0.267, 0.005, 0.329}, {0.275, 0.194, 0.496}, {0.212, 0.359, 0.552},
      {0.153, 0.497, 0.557}, {0.122, 0.632, 0.531}, {0.290, 0.758, 0.428},
      {0.622, 0.854, 0.226}, {0.993, 0.906, 0.144},
  };
  constexpr int n = 8;
  t = std::clamp(t, 0.0, 1.0) * (n - 1);
  const int k = std::min(static_cast<int>(t), n - 2);
  const double u = t - k;
  char buf[16];
  std::snprintf(buf, sizeof(buf), "#%02x%02x%02x",
                static_cast<int>(255 * (stops[k][0] + u * (stops[k + 1][0] - stops[k][0]))),
                static_cast<int>(255 * (stops[k][1] + u * (stops[k + 1][1] - stops[k][1]))),
                static_cast<int>(255 * (stops[k][2] + u * (stops[k + 1][2] - stops[k][2]))));
  return buf;
}

void open_svg(std::ostringstream& out) {
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kPlotW << "\" height=\""
      << kPlotH << "\" viewBox=\"0 0 " << kPlotW << " " << kPlotH << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
}

void axes(std::ostringstream& out, const Frame& f, const std::string& title) {
  out << "<rect x=\"" << fmt(f.px(f.x0)) << "\" y=\"" << fmt(f.py(f.y1)) << "\" width=\""
      << fmt(f.px(f.x1) - f.px(f.x0)) << "\" height=\"" << fmt(f.py(f.y0) - f.py(f.y1))
      << "\" fill=\"none\" stroke=\"black\"/>\n";
  out << "<text x=\"" << fmt(0.5 * (f.px(f.x0) + f.px(f.x1))) << "\" y=\""
      << fmt(kPlotH - 12.0)
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\">"
      << "theta0 [deg]</text>\n";
  out << "<text x=\"16\" y=\"" << fmt(0.5 * (f.py(f.y0) + f.py(f.y1)))
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\" "
      << "transform=\"rotate(-90 16 " << fmt(0.5 * (f.py(f.y0) + f.py(f.y1)))
      << ")\">theta1 [deg]</text>\n";
  out << "<text x=\"" << fmt(0.5 * kPlotW) << "\" y=\"20\" text-anchor=\"middle\" "
      << "font-family=\"sans-serif\" font-size=\"15\">" << title << "</text>\n";
  for (double x = std::ceil(f.x0 / 10.0) * 10.0; x <= f.x1 + 1e-9; x += 10.0) {
    out << "<text x=\"" << fmt(f.px(x)) << "\" y=\"" << fmt(f.py(f.y0) + 16.0)
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">"
        << static_cast<int>(std::lround(x)) << "</text>\n";
  }
  for (double y = std::ceil(f.y0 / 10.0) * 10.0; y <= f.y1 + 1e-9; y += 10.0) {
    out << "<text x=\"" << fmt(f.px(f.x0) - 8.0) << "\" y=\"" << fmt(f.py(y) + 4.0)
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
        << static_cast<int>(std::lround(y)) << "</text>\n";
  }
}

void polygon_path(std::ostringstream& out, const Frame& f, const Polygon& poly,
                  const std::string& stroke, double width) {
  if (poly.size() < 2) return;
  out << "<path d=\"M";
  for (std::size_t k = 0; k < poly.size(); ++k) {
    if (k) out << "L";
    out << fmt(f.px(poly[k][0])) << " " << fmt(f.py(poly[k][1]));
  }
  out << "Z\" fill=\"none\" stroke=\"" << stroke << "\" stroke-width=\"" << fmt(width)
      << "\"/>\n";
}

}  // namespace

std::string landscape_svg(const LandscapeGrid& grid, const SgsSummary& sgs) {
  if (grid.n0() < 2 || grid.n1() < 2) throw ParameterError("grid too small to plot");
  const Frame f{grid.theta0_values.front(), grid.theta0_values.back(),
                grid.theta1_values.front(), grid.theta1_values.back()};
  std::ostringstream out;
  open_svg(out);

  const double peak = std::max(sgs.peak_reward, 1e-12);
  for (std::size_t i = 0; i + 1 < grid.n0(); ++i) {
    for (std::size_t j = 0; j + 1 < grid.n1(); ++j) {
      const double value = 0.25 * (grid.at(i, j) + grid.at(i + 1, j) + grid.at(i, j + 1) +
                                   grid.at(i + 1, j + 1));
      const double x = f.px(grid.theta0_values[i]);
      const double y = f.py(grid.theta1_values[j + 1]);
      out << "<rect x=\"" << fmt(x) << "\" y=\"" << fmt(y) << "\" width=\""
          << fmt(f.px(grid.theta0_values[i + 1]) - x) << "\" height=\""
          << fmt(f.py(grid.theta1_values[j]) - y) << "\" fill=\""
          << heat_color(value / peak) << "\"/>\n";
    }
  }
  // SGS outline, heavier stroke.
  for (const Polygon& poly : sgs.boundary) polygon_path(out, f, poly, "white", 2.5);

  const double px = f.px(sgs.peak_params[0]);
  const double py = f.py(sgs.peak_params[1]);
  out << "<path d=\"M" << fmt(px) << " " << fmt(py - 6) << "L" << fmt(px - 5.2) << " "
      << fmt(py + 4) << "L" << fmt(px + 5.2) << " " << fmt(py + 4)
      << "Z\" fill=\"red\" stroke=\"white\" stroke-width=\"1\"/>\n";

  std::ostringstream title;
  title << (grid.env_label.empty() ? std::string("landscape") : grid.env_label)
        << "  (peak " << sgs.peak_reward << " m/s, SGS "
        << static_cast<int>(std::lround(100.0 * sgs.area_fraction)) << "%)";
  axes(out, f, title.str());
  out << "</svg>\n";
  return out.str();
}

std::string funnel_overlay_svg(const std::vector<SgsSummary>& summaries) {
  if (summaries.empty()) throw ParameterError("funnel overlay needs at least one summary");
  double x0 = 1e300, x1 = -1e300, y0 = 1e300, y1 = -1e300;
  for (const SgsSummary& s : summaries) {
    for (const Polygon& poly : s.boundary) {
      for (const auto& pt : poly) {
        x0 = std::min(x0, pt[0]);
        x1 = std::max(x1, pt[0]);
        y0 = std::min(y0, pt[1]);
        y1 = std::max(y1, pt[1]);
      }
    }
    x0 = std::min(x0, s.peak_params[0]);
    x1 = std::max(x1, s.peak_params[0]);
    y0 = std::min(y0, s.peak_params[1]);
    y1 = std::max(y1, s.peak_params[1]);
  }
  if (!(x0 < x1) || !(y0 < y1)) {
    x0 -= 1.0;
    x1 += 1.0;
    y0 -= 1.0;
    y1 += 1.0;
  }
  const Frame f{x0, x1, y0, y1};
  static const char* colors[] = {"#1b9e77", "#d95f02", "#7570b3", "#e7298a"};
  std::ostringstream out;
  open_svg(out);
  for (std::size_t k = 0; k < summaries.size(); ++k) {
    const SgsSummary& s = summaries[k];
    const std::string color = colors[k % 4];
    for (const Polygon& poly : s.boundary) polygon_path(out, f, poly, color, 2.2);
    const double px = f.px(s.peak_params[0]);
    const double py = f.py(s.peak_params[1]);
    out << "<path d=\"M" << fmt(px) << " " << fmt(py - 7) << "L" << fmt(px - 6) << " "
        << fmt(py + 5) << "L" << fmt(px + 6) << " " << fmt(py + 5) << "Z\" fill=\"" << color
        << "\"/>\n";
    out << "<text x=\"" << fmt(f.px(x1) - 8.0) << "\" y=\""
        << fmt(f.py(y1) + 18.0 + 16.0 * static_cast<double>(k))
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\" fill=\""
        << color << "\">" << (s.env_label.empty() ? "env" : s.env_label) << "</text>\n";
  }
  axes(out, f, "salient gradient sets");
  out << "</svg>\n";
  return out.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParameterError("cannot open for writing: " + path);
  out << content;
}

}  // namespace hopcurve
