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

#include <array>
#include <limits>
#include <optional>
#include <variant>
#include <vector>

#include "dsavoid/core.hpp"

namespace dsavoid::geometry {

inline constexpr double kBoundaryTol = 1e-9;
inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

struct Circle {
  double radius = 1.0;
};

// Semi-axes are expressed in the shape frame (see ObstacleShape::orientation).
struct Ellipse {
  Vec semi_axes;
};

// Convex polygon, planar only. Vertices are given counter-clockwise in the
// shape frame, relative to the shape center.
struct Polygon {
  std::vector<Vec> vertices;
};

// Planar star: R(θ) = radius + amplitude · cos(petals · (θ − phase)) about the
// center. Star-shaped with respect to its center whenever amplitude < radius.
struct StarShape {
  double radius = 1.0;
  double amplitude = 0.0;
  int petals = 5;
  double phase = 0.0;
};

using ShapeKind = std::variant<Circle, Ellipse, Polygon, StarShape>;

struct ObstacleShape {
  ShapeKind kind;
  Vec center;
  // Columns are the shape axes in world coordinates.
  Mat orientation;
  double margin = 0.0;
  // Triangle (apex, tangent point, tangent point) added by extend_hull to a
  // smooth shape. The boundary is then the hull of the shape and the apex.
  std::optional<std::array<Vec, 3>> hull_triangle;

  int dim() const { return static_cast<int>(center.size()); }
};

ObstacleShape make_circle(const Vec& center, double radius, double margin = 0.0);
ObstacleShape make_ellipse(const Vec& center, const Vec& semi_axes, double angle = 0.0,
                           double margin = 0.0);
ObstacleShape make_polygon(const Vec& center, std::vector<Vec> vertices, double angle = 0.0,
                           double margin = 0.0);
ObstacleShape make_star(const Vec& center, double radius, double amplitude, int petals,
                        double phase = 0.0, double margin = 0.0);

// Planar rotation matrix.
Mat rotation2(double angle);

struct Motion {
  Vec linear;   // empty means zero
  Vec angular;  // size 1 in the plane, 3 in space, empty means zero
};

struct Deformation {
  Vec linear;
  Vec angular;
  // Rate of change of a circle radius.
  double radial_rate = 0.0;
  // Rate of change of ellipse semi-axes.
  Vec axes_rate;
  // Emit only the expanding part of the deformation, along the normal.
  bool repulsive = false;
};

struct GapSpec {
  std::array<Vec, 2> edge_points;
  Vec center;
};

struct Obstacle {
  ObstacleShape shape;
  Vec reference_point;
  bool is_boundary = false;
  int power = 1;
  Motion motion;
  Deformation deformation;
  std::optional<GapSpec> gap;

  int dim() const { return shape.dim(); }
  const Vec& center() const { return shape.center; }
};

// Builds an obstacle whose reference point is the shape center.
Obstacle make_obstacle(ObstacleShape shape, bool is_boundary = false, int power = 1);

GapSpec make_gap(const Vec& edge_a, const Vec& edge_b);

struct LocalGeometry {
  double gamma = 0.0;
  Vec reference_direction;
  Vec boundary_point;
  // Oriented into free space: outward for obstacles, inward for boundaries.
  Vec normal;
  // d x (d-1), orthonormal complement of the normal.
  Mat tangents;
  bool is_boundary = false;
};

// Checks shape parameters and the reference point. Throws Error.
void validate(const Obstacle& obs);

// Rough scale of the shape, used for finite-difference steps.
double characteristic_size(const ObstacleShape& shape);

// True if x lies strictly inside the margin-expanded shape.
bool inside_shape(const Vec& x, const ObstacleShape& shape);

Vec reference_direction(const Vec& x, const Obstacle& obs);

// Distance from the reference point to the boundary along the ray through x.
double local_radius(const Vec& x, const Obstacle& obs);

// Local radius along a unit direction from an arbitrary interior origin.
double radius_along(const Vec& origin, const Vec& dir, const ObstacleShape& shape);

Vec boundary_point(const Vec& x, const Obstacle& obs);

// Forward or inverted distance function. At the reference point it returns 0
// for obstacles and +inf for boundaries.
double gamma(const Vec& x, const Obstacle& obs);

// Outward unit normal of a smooth shape at boundary_point(x). For boundaries
// the result points into free space.
Vec surface_normal(const Vec& x, const Obstacle& obs);

// Smooth blend of polygon face normals. Expects a point outside the polygon.
Vec pseudo_normal(const Vec& x, const Obstacle& obs, int weight_power = 3);

// Sphere inversion about the reference point through the boundary.
Vec mirror_point(const Vec& x, const Obstacle& obs);

Vec guiding_reference_point(const Vec& x, const Obstacle& obs);

// Free-space oriented normal: analytic for smooth shapes, pseudo-normal for
// polygons (evaluated at the mirrored point for boundaries).
Vec free_space_normal(const Vec& x, const Obstacle& obs, int weight_power = 3);

LocalGeometry local_geometry(const Vec& x, const Obstacle& obs, int weight_power = 3);

// Orthonormal complement of a unit vector, d x (d-1).
Mat tangent_space(const Vec& n);

std::vector<ObstacleShape> extend_hull(const std::vector<Obstacle>& cluster,
                                       const Vec& common_ref);

// Tangent points of the shape seen from an exterior apex (planar).
std::array<Vec, 2> tangent_points(const ObstacleShape& shape, const Vec& apex);

double local_curvature(const Vec& boundary_pt, const Vec& dir, const Obstacle& obs);

// Boundary point at planar angle theta as seen from the reference point.
Vec boundary_at_angle(double theta, const Obstacle& obs);

// Point-to-segment projection.
Vec project_to_segment(const Vec& x, const Vec& a, const Vec& b);

// Projection onto the triangle (a, b, c), planar.
Vec project_to_triangle(const Vec& x, const Vec& a, const Vec& b, const Vec& c);

bool in_triangle(const Vec& x, const Vec& a, const Vec& b, const Vec& c);

// Offset polygon of the faces (world coordinates, counter-clockwise).
std::vector<Vec> polygon_world_vertices(const ObstacleShape& shape);

}  // namespace dsavoid::geometry
