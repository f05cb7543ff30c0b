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
#include <algorithm>
#include <cmath>
#include <numbers>

#include "internal.hpp"

namespace dsavoid::geometry {
namespace {

// Boundary sample of the base shape seen from its center, with its normal.
struct Sample {
  Vec point;
  Vec normal;
};

Sample sample_from_center(const ObstacleShape& shape, double theta) {
  Vec u = vec2(std::cos(theta), std::sin(theta));
  internal::RayHit hit = internal::ray_exit(shape.center, u, shape, true);
  return {shape.center + hit.radius * u, hit.normal};
}

std::vector<Vec> convex_hull(std::vector<Vec> pts) {
  std::sort(pts.begin(), pts.end(), [](const Vec& a, const Vec& b) {
    return a[0] < b[0] || (a[0] == b[0] && a[1] < b[1]);
  });
  std::vector<Vec> hull(2 * pts.size());
  size_t k = 0;
  for (size_t i = 0; i < pts.size(); ++i) {
    while (k >= 2 && cross2(hull[k - 1] - hull[k - 2], pts[i] - hull[k - 2]) <= 0.0) --k;
    hull[k++] = pts[i];
  }
  for (size_t i = pts.size() - 1, t = k + 1; i > 0; --i) {
    while (k >= t && cross2(hull[k - 1] - hull[k - 2], pts[i - 1] - hull[k - 2]) <= 0.0) --k;
    hull[k++] = pts[i - 1];
  }
  hull.resize(k - 1);
  return hull;
}

}  // namespace

std::array<Vec, 2> tangent_points(const ObstacleShape& shape, const Vec& apex) {
  if (shape.dim() != 2) throw Error(ErrorCode::kUnsupportedDimension, "tangent cone is planar");
  ObstacleShape base = shape;
  base.hull_triangle.reset();
  auto visibility = [&](double theta) {
    Sample s = sample_from_center(base, theta);
    return s.normal.dot(apex - s.point);
  };
  constexpr int kSamples = 720;
  std::vector<Vec> found;
  double prev_theta = 0.0;
  double prev = visibility(prev_theta);
  for (int i = 1; i <= kSamples && found.size() < 2; ++i) {
    double theta = 2.0 * std::numbers::pi * i / kSamples;
    double cur = visibility(theta);
    if ((prev > 0.0) != (cur > 0.0)) {
      double lo = prev_theta, hi = theta;
      bool lo_pos = prev > 0.0;
      for (int it = 0; it < 100; ++it) {
        double mid = 0.5 * (lo + hi);
        ((visibility(mid) > 0.0) == lo_pos ? lo : hi) = mid;
      }
      found.push_back(sample_from_center(base, 0.5 * (lo + hi)).point);
    }
    prev = cur;
    prev_theta = theta;
  }
  if (found.size() != 2) {
    throw Error(ErrorCode::kDegenerateShape, "apex does not see two tangent points");
  }
  return {found[0], found[1]};
}

std::vector<ObstacleShape> extend_hull(const std::vector<Obstacle>& cluster,
                                       const Vec& common_ref) {
  std::vector<ObstacleShape> out;
  out.reserve(cluster.size());
  for (const auto& obs : cluster) {
    if (obs.is_boundary) throw Error(ErrorCode::kInvalidArgument, "hull extension is for obstacles");
    ObstacleShape shape = obs.shape;
    Vec d = common_ref - shape.center;
    double dist = d.norm();
    if (dist < 1e-15 || dist <= radius_along(shape.center, d / dist, shape) * (1.0 + 1e-9)) {
      out.push_back(std::move(shape));
      continue;
    }
    if (shape.dim() != 2) throw Error(ErrorCode::kUnsupportedDimension, "hull extension is planar");
    if (std::holds_alternative<Polygon>(shape.kind)) {
      std::vector<Vec> pts = polygon_world_vertices(shape);
      pts.push_back(common_ref);
      std::vector<Vec> hull = convex_hull(std::move(pts));
      std::vector<Vec> local;
      for (const auto& p : hull) local.push_back(shape.orientation.transpose() * (p - shape.center));
      shape.kind = Polygon{std::move(local)};
      shape.margin = 0.0;
    } else {
      auto t = tangent_points(shape, common_ref);
      shape.hull_triangle = std::array<Vec, 3>{common_ref, t[0], t[1]};
    }
    out.push_back(std::move(shape));
  }
  return out;
}

Vec boundary_at_angle(double theta, const Obstacle& obs) {
  Vec u = vec2(std::cos(theta), std::sin(theta));
  return obs.reference_point + radius_along(obs.reference_point, u, obs.shape) * u;
}

double local_curvature(const Vec& boundary_pt, const Vec& dir, const Obstacle& obs) {
  const double h = 1e-5 * characteristic_size(obs.shape);
  if (std::holds_alternative<Polygon>(obs.shape.kind)) {
    for (const auto& v : polygon_world_vertices(obs.shape)) {
      if ((v - boundary_pt).norm() <= 2.0 * h) {
        throw Error(ErrorCode::kNondifferentiable, "polygon vertex");
      }
    }
  }
  Vec step = h * dir.normalized();
  return (local_radius(boundary_pt - step, obs) - local_radius(boundary_pt + step, obs)) / (2.0 * h);
}

}  // namespace dsavoid::geometry
