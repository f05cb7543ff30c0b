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

#include "internal.hpp"

namespace dsavoid::geometry {

GapSpec make_gap(const Vec& edge_a, const Vec& edge_b) {
  GapSpec g;
  g.edge_points = {edge_a, edge_b};
  g.center = 0.5 * (edge_a + edge_b);
  return g;
}

Vec project_to_segment(const Vec& x, const Vec& a, const Vec& b) {
  Vec e = b - a;
  double len2 = e.squaredNorm();
  if (len2 == 0.0) return a;
  double s = std::clamp((x - a).dot(e) / len2, 0.0, 1.0);
  return a + s * e;
}

bool in_triangle(const Vec& x, const Vec& a, const Vec& b, const Vec& c) {
  double d1 = cross2(b - a, x - a);
  double d2 = cross2(c - b, x - b);
  double d3 = cross2(a - c, x - c);
  bool has_neg = d1 < 0.0 || d2 < 0.0 || d3 < 0.0;
  bool has_pos = d1 > 0.0 || d2 > 0.0 || d3 > 0.0;
  return !(has_neg && has_pos);
}

Vec project_to_triangle(const Vec& x, const Vec& a, const Vec& b, const Vec& c) {
  if (in_triangle(x, a, b, c)) return x;
  Vec best = project_to_segment(x, a, b);
  for (const auto& cand : {project_to_segment(x, b, c), project_to_segment(x, c, a)}) {
    if ((cand - x).squaredNorm() < (best - x).squaredNorm()) best = cand;
  }
  return best;
}

Vec guiding_reference_point(const Vec& x, const Obstacle& obs) {
  if (!obs.gap) return obs.reference_point;
  if (obs.dim() != 2) throw Error(ErrorCode::kUnsupportedDimension, "gap regions are planar");
  const auto& gap = *obs.gap;
  const Vec& ref = obs.reference_point;
  Vec proj = project_to_triangle(x, ref, gap.edge_points[0], gap.edge_points[1]);
  if ((proj - x).squaredNorm() == 0.0) return x;
  // Full projection near the gap, fading to the reference point between one
  // and two reference distances from the gap center.
  double t = (gap.center - x).norm() / (gap.center - ref).norm();
  double s = std::clamp(2.0 - t, 0.0, 1.0);
  return ref + s * (proj - ref);
}

}  // namespace dsavoid::geometry
