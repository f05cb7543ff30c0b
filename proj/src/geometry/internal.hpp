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

#include "dsavoid/geometry.hpp"

namespace dsavoid::geometry::internal {

struct RayHit {
  double radius = 0.0;
  // Outward normal at the hit, world frame. Empty unless requested.
  Vec normal;
  // Index of the polygon face that was hit, -1 otherwise.
  int face = -1;
};

// Exit of the ray origin + t·dir from the margin-expanded (and possibly
// hull-extended) shape. The origin must be interior.
RayHit ray_exit(const Vec& origin, const Vec& dir, const ObstacleShape& shape, bool want_normal);

struct Face {
  Vec a, b;       // endpoints, world frame, counter-clockwise
  Vec normal;     // outward unit normal
};

// Faces of the offset polygon in world coordinates.
std::vector<Face> polygon_faces(const ObstacleShape& shape);

// Positive root of the exit from a segment along a ray, or -1 when missed.
double ray_segment(const Vec& origin, const Vec& dir, const Vec& a, const Vec& b);

}  // namespace dsavoid::geometry::internal
