// Copyright 2026 The dsavoid Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include "dsavoid/io/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

namespace dsavoid::io {
namespace {

using geometry::Obstacle;

constexpr double kWidthPx = 800.0;
constexpr int kOutlineSamples = 360;

void require_planar(int dim) {
  if (dim != 2) throw Error(ErrorCode::kUnsupportedDimension, "plots are planar");
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3f", v);
  return buf;
}

// World-to-pixel transform with the y axis pointing up.
struct Canvas {
  Vec lower, upper;
  double scale = 1.0;
  double height = 0.0;

  Canvas(const Vec& lo, const Vec& hi) : lower(lo), upper(hi) {
    scale = kWidthPx / (hi[0] - lo[0]);
    height = scale * (hi[1] - lo[1]);
  }
  double px(double x) const { return (x - lower[0]) * scale; }
  double py(double y) const { return height - (y - lower[1]) * scale; }
  std::string point(const Vec& p) const { return num(px(p[0])) + "," + num(py(p[1])); }
};

std::string outline_path(const Obstacle& obs, const Canvas& c) {
  std::string d;
  for (int k = 0; k < kOutlineSamples; ++k) {
    double theta = 2.0 * std::numbers::pi * k / kOutlineSamples;
    d += (k == 0 ? "M" : " L") + c.point(geometry::boundary_at_angle(theta, obs));
  }
  return d + " Z";
}

std::string cross(const Vec& p, const Canvas& c, double size) {
  double x = c.px(p[0]), y = c.py(p[1]);
  return "<path d=\"M" + num(x - size) + "," + num(y - size) + " L" + num(x + size) + "," +
         num(y + size) + " M" + num(x - size) + "," + num(y + size) + " L" + num(x + size) + "," +
         num(y - size) + "\" stroke=\"#000\" stroke-width=\"2\"/>\n";
}

std::string star(const Vec& p, const Canvas& c, double size) {
  std::string pts;
  for (int k = 0; k < 10; ++k) {
    double r = (k % 2 == 0) ? size : 0.45 * size;
    double a = std::numbers::pi / 2.0 + k * std::numbers::pi / 5.0;
    if (k > 0) pts += ' ';
    pts += num(c.px(p[0]) + r * std::cos(a)) + "," + num(c.py(p[1]) - r * std::sin(a));
  }
  return "<polygon points=\"" + pts + "\" fill=\"#f2c200\" stroke=\"#000\"/>\n";
}

void draw_obstacles(std::ostringstream& svg, const std::vector<Obstacle>& env, const Canvas& c) {
  for (const auto& obs : env) {
    if (!obs.is_boundary) continue;
    svg << "<path d=\"M0,0 H" << num(kWidthPx) << " V" << num(c.height) << " H0 Z "
        << outline_path(obs, c) << "\" fill=\"#b8b8b8\" fill-rule=\"evenodd\" stroke=\"#000\"/>\n";
  }
  for (const auto& obs : env) {
    if (obs.is_boundary) continue;
    svg << "<path d=\"" << outline_path(obs, c) << "\" fill=\"#b8b8b8\" stroke=\"#000\"/>\n";
  }
}

void draw_references(std::ostringstream& svg, const std::vector<Obstacle>& env, const Canvas& c) {
  for (const auto& obs : env) svg << cross(obs.reference_point, c, 5.0);
}

std::string header(const Canvas& c) {
  return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(kWidthPx) + "\" height=\"" +
         num(c.height) + "\" viewBox=\"0 0 " + num(kWidthPx) + " " + num(c.height) + "\">\n" +
         "<rect width=\"100%\" height=\"100%\" fill=\"#fff\"/>\n";
}

}  // namespace

std::vector<FieldSample> sample_field(const std::vector<Obstacle>& env, const VelocityField& field,
                                      const sim::PlotConfig& config) {
  require_planar(static_cast<int>(config.lower.size()));
  require_planar(static_cast<int>(config.upper.size()));
  for (const auto& obs : env) require_planar(obs.dim());
  if (config.resolution < 2) throw Error(ErrorCode::kInvalidArgument, "resolution must be >= 2");
  if (!(config.upper[0] > config.lower[0] && config.upper[1] > config.lower[1])) {
    throw Error(ErrorCode::kInvalidArgument, "empty plot window");
  }
  const int n = config.resolution;
  std::vector<FieldSample> out;
  out.reserve(static_cast<size_t>(n) * n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      FieldSample s;
      s.x = vec2(config.lower[0] + (config.upper[0] - config.lower[0]) * i / (n - 1),
                 config.lower[1] + (config.upper[1] - config.lower[1]) * j / (n - 1));
      s.gamma_min = sim::min_gamma(s.x, env);
      s.free = s.gamma_min > 1.0;
      s.velocity = Vec::Zero(2);
      if (s.free) {
        try {
          s.velocity = field(s.x);
        } catch (const Error&) {
          s.free = false;
        }
      }
      out.push_back(std::move(s));
    }
  }
  return out;
}

std::string plot_field(const std::vector<Obstacle>& env, const Vec& attractor,
                       const VelocityField& field, const sim::PlotConfig& config,
                       const std::vector<std::vector<Vec>>& paths) {
  require_planar(static_cast<int>(attractor.size()));
  auto samples = sample_field(env, field, config);
  Canvas c(config.lower, config.upper);
  std::ostringstream svg;
  svg << header(c);
  draw_obstacles(svg, env, c);

  double cell = kWidthPx / (config.resolution - 1);
  double len = 0.7 * cell;
  svg << "<g stroke=\"#1f4e9a\" stroke-width=\"1\" fill=\"none\">\n";
  for (const auto& s : samples) {
    if (!s.free) continue;
    double v = s.velocity.norm();
    if (!(v > 1e-12)) continue;
    double ux = s.velocity[0] / v, uy = -s.velocity[1] / v;
    double x0 = c.px(s.x[0]) - 0.5 * len * ux, y0 = c.py(s.x[1]) - 0.5 * len * uy;
    double x1 = x0 + len * ux, y1 = y0 + len * uy;
    double h = 0.3 * len;
    svg << "<path d=\"M" << num(x0) << "," << num(y0) << " L" << num(x1) << "," << num(y1) << " M"
        << num(x1 - h * (ux - 0.5 * uy)) << "," << num(y1 - h * (uy + 0.5 * ux)) << " L"
        << num(x1) << "," << num(y1) << " L" << num(x1 - h * (ux + 0.5 * uy)) << ","
        << num(y1 - h * (uy - 0.5 * ux)) << "\"/>\n";
  }
  svg << "</g>\n";

  for (const auto& path : paths) {
    if (path.size() < 2) continue;
    svg << "<polyline fill=\"none\" stroke=\"#c0392b\" stroke-width=\"2\" points=\"";
    for (size_t k = 0; k < path.size(); ++k) svg << (k ? " " : "") << c.point(path[k]);
    svg << "\"/>\n";
  }
  draw_references(svg, env, c);
  svg << star(attractor, c, 10.0);
  svg << "</svg>\n";
  return svg.str();
}

std::string plot_arm(const sim::ArmScenario& scenario, const sim::ArmResult& result, int snapshots) {
  Vec lo = scenario.model.base, hi = scenario.model.base;
  double reach = 0.0;
  for (double l : scenario.model.lengths) reach += l;
  lo.array() -= reach + 0.3;
  hi.array() += reach + 0.3;
  Canvas c(lo, hi);
  std::ostringstream svg;
  svg << header(c);
  draw_obstacles(svg, scenario.obstacles, c);
  draw_references(svg, scenario.obstacles, c);

  const auto& traj = result.joint_trajectory;
  int count = std::min<int>(std::max(snapshots, 2), static_cast<int>(traj.size()));
  for (int k = 0; k < count; ++k) {
    size_t idx = count > 1 ? static_cast<size_t>(k) * (traj.size() - 1) / (count - 1) : 0;
    arm::ArmModel model = scenario.model;
    model.q = traj[idx];
    auto poses = arm::forward_kinematics(model);
    double shade = count > 1 ? 0.85 - 0.75 * k / (count - 1) : 0.1;
    int g = static_cast<int>(255 * shade);
    svg << "<polyline fill=\"none\" stroke=\"rgb(" << g << "," << g << "," << g
        << ")\" stroke-width=\"3\" points=\"";
    for (size_t j = 0; j < poses.joints.size(); ++j) svg << (j ? " " : "") << c.point(poses.joints[j]);
    svg << "\"/>\n";
  }
  svg << star(scenario.goal, c, 10.0);
  svg << "</svg>\n";
  return svg.str();
}

sim::PlotConfig default_plot_config(const sim::Scenario& s) {
  require_planar(s.dimension);
  Vec lo = s.ds.attractor, hi = s.ds.attractor;
  auto include = [&](const Vec& p, double pad) {
    lo = lo.cwiseMin((p.array() - pad).matrix());
    hi = hi.cwiseMax((p.array() + pad).matrix());
  };
  for (const auto& x : s.starts) include(x, 0.0);
  for (const auto& obs : s.obstacles) {
    double size = geometry::characteristic_size(obs.shape);
    include(obs.center(), obs.is_boundary ? 1.02 * size : size);
  }
  double pad = 0.1 * std::max(hi[0] - lo[0], hi[1] - lo[1]) + 0.5;
  bool has_boundary = std::any_of(s.obstacles.begin(), s.obstacles.end(),
                                  [](const Obstacle& o) { return o.is_boundary; });
  if (has_boundary) pad = 0.05 * std::max(hi[0] - lo[0], hi[1] - lo[1]);
  sim::PlotConfig cfg;
  cfg.lower = (lo.array() - pad).matrix();
  cfg.upper = (hi.array() + pad).matrix();
  return cfg;
}

}  // namespace dsavoid::io
