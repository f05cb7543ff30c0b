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

#include <vector>

#include "dsavoid/core.hpp"
#include "dsavoid/geometry.hpp"

namespace dsavoid::dirspace {

inline constexpr double kAntipodalTol = 1e-9;

// Orthonormal frame whose first column is the base direction.
struct DirectionFrame {
  Vec base;
  Mat basis;
};

// Completes b to a right-handed orthonormal basis by Gram-Schmidt over the
// canonical axes, taking the axes with the largest component orthogonal to b
// first (ties by index).
DirectionFrame make_frame(const Vec& b);

// Maps a unit vector to κ in R^(d-1). The norm of κ is the angle to the base.
Vec to_direction_space(const Vec& v, const DirectionFrame& frame);

Vec from_direction_space(const Vec& kappa, const DirectionFrame& frame);

// Mean taken in direction space around `base`. Weights must be non-negative
// with a sum of at most one; any missing mass pulls the result toward base.
Vec weighted_direction_mean(const std::vector<Vec>& vectors, const std::vector<double>& weights,
                            const Vec& base);

struct DescentParams {
  double step = 1.0;
  int max_iterations = 20000;
  double tolerance = 1e-12;
  double gamma_base = 1.1;
  // Sample the interior of the first obstacle when the segment between the
  // reference points holds no common point.
  bool search_overlap = true;
};

struct ClosestPoints {
  Vec point1;
  Vec point2;
  double distance = 0.0;
  int iterations = 0;
};

// Closest boundary points of two disjoint convex obstacles, found by descent
// over the boundary angles of both shapes.
ClosestPoints closest_distance_descent(const geometry::Obstacle& obs1,
                                       const geometry::Obstacle& obs2,
                                       const DescentParams& params = {});

// Point inside both of two intersecting obstacles. When `iterates` is given
// every accepted iterate is appended to it. Throws kDisjoint when no common
// interior point is found.
Vec common_reference_descent(const geometry::Obstacle& obs1, const geometry::Obstacle& obs2,
                             const DescentParams& params = {},
                             std::vector<Vec>* iterates = nullptr);

struct CurvatureReport {
  bool holds = false;
  double obstacle_max = 0.0;
  double boundary_min = 0.0;
  int samples = 64;
  int skipped = 0;
};

CurvatureReport curvature_condition(const geometry::Obstacle& obs,
                                    const geometry::Obstacle& boundary, int samples = 64);

}  // namespace dsavoid::dirspace
