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
#pragma once

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>

#include "dsavoid/core.hpp"
#include "dsavoid/geometry.hpp"

namespace dsavoid::testing {

inline Vec random_unit(std::mt19937_64& rng, int dim) {
  std::normal_distribution<double> g(0.0, 1.0);
  Vec v(dim);
  do {
    for (int i = 0; i < dim; ++i) v[i] = g(rng);
  } while (v.norm() < 1e-6);
  return v.normalized();
}

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

// Kahan's form, accurate near 0 and pi.
inline double angle_between(const Vec& a, const Vec& b) {
  Vec u = b.norm() * a;
  Vec v = a.norm() * b;
  return 2.0 * std::atan2((u - v).norm(), (u + v).norm());
}

inline double deg(double rad) { return rad * 180.0 / std::numbers::pi; }

inline void check_vec(const Vec& actual, const Vec& expected, double tol) {
  REQUIRE(actual.size() == expected.size());
  CHECK((actual - expected).norm() <= tol);
}

inline geometry::Obstacle unit_square(double angle = 0.0, double margin = 0.0) {
  return geometry::make_obstacle(geometry::make_polygon(
      vec2(0.0, 0.0), {vec2(-1, -1), vec2(1, -1), vec2(1, 1), vec2(-1, 1)}, angle, margin));
}

inline geometry::Obstacle circle(const Vec& c, double r, bool boundary = false) {
  return geometry::make_obstacle(geometry::make_circle(c, r), boundary);
}

inline geometry::Obstacle ellipse(const Vec& c, double a, double b, double angle = 0.0,
                                  bool boundary = false) {
  return geometry::make_obstacle(geometry::make_ellipse(c, vec2(a, b), angle), boundary);
}

// Runs fn and returns the code of the Error it throws.
inline ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::kInvalidArgument;
}

// Independent inside test for convex polygons given in world coordinates.
inline bool inside_convex(const Vec& x, const std::vector<Vec>& verts) {
  for (size_t i = 0; i < verts.size(); ++i) {
    const Vec& a = verts[i];
    const Vec& b = verts[(i + 1) % verts.size()];
    if (cross2(b - a, x - a) <= 0.0) return false;
  }
  return true;
}

}  // namespace dsavoid::testing
