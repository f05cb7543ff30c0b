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

#include "dsavoid/dirspace.hpp"
#include "internal.hpp"

namespace dsavoid::geometry {

Vec pseudo_normal(const Vec& x, const Obstacle& obs, int weight_power) {
  if (!std::holds_alternative<Polygon>(obs.shape.kind)) {
    throw Error(ErrorCode::kInvalidArgument, "pseudo-normal needs a polygon");
  }
  const Vec r = reference_direction(x, obs);
  const double dist = (x - obs.reference_point).norm();
  const double radius = radius_along(obs.reference_point, r, obs.shape);
  const double scale = characteristic_size(obs.shape);
  if (dist < radius * (1.0 - 1e-12)) {
    throw Error(ErrorCode::kInsideObstacle, "pseudo-normal evaluated inside the polygon");
  }

  const auto faces = internal::polygon_faces(obs.shape);
  const size_t n = faces.size();
  std::vector<double> w(n, 0.0);

  // Points lying on a face take that face's normal (split at shared vertices).
  int on_face = 0;
  for (size_t i = 0; i < n; ++i) {
    const auto& f = faces[i];
    Vec e = f.b - f.a;
    double s = (x - f.a).dot(e) / e.squaredNorm();
    double h = f.normal.dot(x - f.a);
    if (std::abs(h) <= 1e-12 * scale && s >= -1e-12 && s <= 1.0 + 1e-12) {
      w[i] = 1.0;
      ++on_face;
    }
  }

  if (on_face == 0) {
    for (size_t i = 0; i < n; ++i) {
      const auto& f = faces[i];
      // Closest edge point of the tile and the in-plane direction into it.
      bool a_closer = (x - f.a).squaredNorm() <= (x - f.b).squaredNorm();
      const Vec& p = a_closer ? f.a : f.b;
      const Vec& q = a_closer ? f.b : f.a;
      Vec v = x - p;
      if (f.normal.dot(v) <= 0.0) continue;
      Vec e_hat = (q - p).normalized();
      double c = std::clamp(e_hat.dot(v) / v.norm(), -1.0, 1.0);
      double phi = std::acos(c);
      if (phi <= 0.0) continue;
      w[i] = std::pow(std::numbers::pi / phi, weight_power) - 1.0;
    }
  }

  double sum = 0.0;
  for (double wi : w) sum += wi;
  if (!(sum > 0.0)) return r;

  // Distant points blend toward the reference direction.
  const double blend = std::min(1.0, radius / dist);
  std::vector<Vec> normals;
  std::vector<double> weights;
  for (size_t i = 0; i < n; ++i) {
    if (w[i] <= 0.0) continue;
    normals.push_back(faces[i].normal);
    weights.push_back(blend * w[i] / sum);
  }
  return dirspace::weighted_direction_mean(normals, weights, r);
}

}  // namespace dsavoid::geometry
