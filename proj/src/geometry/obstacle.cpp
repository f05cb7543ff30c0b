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
#include <cmath>

#include "dsavoid/dirspace.hpp"
#include "internal.hpp"

namespace dsavoid::geometry {
namespace {

double int_pow(double x, int n) {
  double out = 1.0;
  for (int i = 0; i < n; ++i) out *= x;
  return out;
}

bool is_polygon(const Obstacle& obs) { return std::holds_alternative<Polygon>(obs.shape.kind); }

}  // namespace

Vec reference_direction(const Vec& x, const Obstacle& obs) {
  Vec d = x - obs.reference_point;
  double n = d.norm();
  if (n == 0.0) throw Error(ErrorCode::kUndefinedDirection, "point equals the reference point");
  return d / n;
}

double local_radius(const Vec& x, const Obstacle& obs) {
  return radius_along(obs.reference_point, reference_direction(x, obs), obs.shape);
}

Vec boundary_point(const Vec& x, const Obstacle& obs) {
  Vec r = reference_direction(x, obs);
  return obs.reference_point + radius_along(obs.reference_point, r, obs.shape) * r;
}

double gamma(const Vec& x, const Obstacle& obs) {
  Vec d = x - obs.reference_point;
  double dist = d.norm();
  if (dist == 0.0) return obs.is_boundary ? kInfinity : 0.0;
  double radius = radius_along(obs.reference_point, d / dist, obs.shape);
  if (radius <= 0.0) return obs.is_boundary ? 0.0 : kInfinity;
  double ratio = obs.is_boundary ? radius / dist : dist / radius;
  return int_pow(ratio, 2 * obs.power);
}

Vec surface_normal(const Vec& x, const Obstacle& obs) {
  Vec r = reference_direction(x, obs);
  Vec n = internal::ray_exit(obs.reference_point, r, obs.shape, true).normal;
  return obs.is_boundary ? Vec(-n) : n;
}

Vec mirror_point(const Vec& x, const Obstacle& obs) {
  Vec d = x - obs.reference_point;
  double dist = d.norm();
  if (dist == 0.0) throw Error(ErrorCode::kUndefinedDirection, "point equals the reference point");
  double radius = radius_along(obs.reference_point, d / dist, obs.shape);
  double s = radius / dist;
  return s * s * d + obs.reference_point;
}

Vec free_space_normal(const Vec& x, const Obstacle& obs, int weight_power) {
  if (!is_polygon(obs)) return surface_normal(x, obs);
  if (!obs.is_boundary) return pseudo_normal(x, obs, weight_power);
  Vec mir = mirror_point(x, obs);
  return -pseudo_normal(mir, obs, weight_power);
}

LocalGeometry local_geometry(const Vec& x, const Obstacle& obs, int weight_power) {
  LocalGeometry g;
  g.is_boundary = obs.is_boundary;
  Vec d = x - obs.reference_point;
  double dist = d.norm();
  if (dist == 0.0) throw Error(ErrorCode::kUndefinedDirection, "point equals the reference point");
  g.reference_direction = d / dist;
  internal::RayHit hit =
      internal::ray_exit(obs.reference_point, g.reference_direction, obs.shape, true);
  g.boundary_point = obs.reference_point + hit.radius * g.reference_direction;
  if (hit.radius <= 0.0) {
    g.gamma = obs.is_boundary ? 0.0 : kInfinity;
  } else {
    double ratio = obs.is_boundary ? hit.radius / dist : dist / hit.radius;
    g.gamma = int_pow(ratio, 2 * obs.power);
  }
  if (is_polygon(obs)) {
    g.normal = free_space_normal(x, obs, weight_power);
  } else {
    g.normal = obs.is_boundary ? Vec(-hit.normal) : hit.normal;
  }
  g.tangents = tangent_space(g.normal);
  return g;
}

Mat tangent_space(const Vec& n) {
  const int d = static_cast<int>(n.size());
  return dirspace::make_frame(n).basis.rightCols(d - 1);
}

}  // namespace dsavoid::geometry
