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

namespace dsavoid {

Vec angular_cross(const Vec& omega, const Vec& lever) {
  Vec out = Vec::Zero(lever.size());
  if (omega.size() == 0) return out;
  if (lever.size() == 2 && omega.size() == 1) {
    out << -omega[0] * lever[1], omega[0] * lever[0];
  } else if (lever.size() == 3 && omega.size() == 3) {
    Eigen::Vector3d w = omega, r = lever;
    out = w.cross(r);
  } else {
    throw Error(ErrorCode::kUnsupportedDimension, "angular velocity needs d = 2 or 3");
  }
  return out;
}

namespace geometry {
namespace {

double signed_area(const std::vector<Vec>& v) {
  double a = 0.0;
  for (size_t i = 0; i < v.size(); ++i) a += cross2(v[i], v[(i + 1) % v.size()]);
  return 0.5 * a;
}

struct StarEval {
  double rho, drho;
};

StarEval star_radius(const StarShape& s, double theta) {
  double arg = s.petals * (theta - s.phase);
  return {s.radius + s.amplitude * std::cos(arg), -s.amplitude * s.petals * std::sin(arg)};
}

Vec star_normal_local(const StarShape& s, double theta) {
  auto [rho, drho] = star_radius(s, theta);
  double c = std::cos(theta), sn = std::sin(theta);
  Vec n = vec2(drho * sn + rho * c, -drho * c + rho * sn);
  return n.normalized();
}

// Positive exit root of |o + t u|^2 = 1.
double unit_sphere_exit(const Vec& o, const Vec& u) {
  double a = u.squaredNorm();
  double b = 2.0 * o.dot(u);
  double c = o.squaredNorm() - 1.0;
  double disc = b * b - 4.0 * a * c;
  if (disc < 0.0 || a <= 0.0) throw Error(ErrorCode::kDegenerateShape, "ray misses the shape");
  double t = (-b + std::sqrt(disc)) / (2.0 * a);
  if (t < 0.0) {
    // Origins on the surface (hull apexes) see zero radius in outward directions.
    if (c <= 1e-9) return 0.0;
    throw Error(ErrorCode::kDegenerateShape, "ray origin outside the shape");
  }
  return t;
}

double star_exit(const StarShape& s, const Vec& o, const Vec& u) {
  if (o.norm() < 1e-12) return star_radius(s, std::atan2(u[1], u[0])).rho;
  auto g = [&](double t) {
    Vec p = o + t * u;
    return p.norm() - star_radius(s, std::atan2(p[1], p[0])).rho;
  };
  if (g(0.0) >= 0.0) throw Error(ErrorCode::kDegenerateShape, "ray origin outside the star");
  const double t_max = o.norm() + s.radius + std::abs(s.amplitude) + 1e-9;
  const int steps = 64 * std::max(1, s.petals);
  double lo = 0.0, hi = t_max;
  double prev = 0.0;
  for (int i = 1; i <= steps; ++i) {
    double t = t_max * i / steps;
    if (g(t) >= 0.0) {
      lo = prev;
      hi = t;
      break;
    }
    prev = t;
  }
  for (int i = 0; i < 80; ++i) {
    double mid = 0.5 * (lo + hi);
    (g(mid) < 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

// Outward normal of a margin-expanded radial surface, given the base normal at
// the base exit point and the base radius along the ray direction u.
Vec margin_normal(const Vec& u, const Vec& n0, double r0, double margin) {
  if (margin <= 0.0) return n0;
  double c = n0.dot(u);
  Vec n = u - (r0 / (r0 + margin)) * (u - n0 / c);
  return n.normalized();
}

}  // namespace

Mat rotation2(double angle) {
  Mat r(2, 2);
  r << std::cos(angle), -std::sin(angle), std::sin(angle), std::cos(angle);
  return r;
}

ObstacleShape make_circle(const Vec& center, double radius, double margin) {
  ObstacleShape s;
  s.kind = Circle{radius};
  s.center = center;
  s.orientation = Mat::Identity(center.size(), center.size());
  s.margin = margin;
  return s;
}

ObstacleShape make_ellipse(const Vec& center, const Vec& semi_axes, double angle, double margin) {
  ObstacleShape s;
  s.kind = Ellipse{semi_axes};
  s.center = center;
  s.orientation = center.size() == 2 ? rotation2(angle) : Mat::Identity(center.size(), center.size());
  s.margin = margin;
  return s;
}

ObstacleShape make_polygon(const Vec& center, std::vector<Vec> vertices, double angle,
                           double margin) {
  if (signed_area(vertices) < 0.0) std::reverse(vertices.begin(), vertices.end());
  ObstacleShape s;
  s.kind = Polygon{std::move(vertices)};
  s.center = center;
  s.orientation = rotation2(angle);
  s.margin = margin;
  return s;
}

ObstacleShape make_star(const Vec& center, double radius, double amplitude, int petals,
                        double phase, double margin) {
  ObstacleShape s;
  s.kind = StarShape{radius, amplitude, petals, phase};
  s.center = center;
  s.orientation = rotation2(0.0);
  s.margin = margin;
  return s;
}

Obstacle make_obstacle(ObstacleShape shape, bool is_boundary, int power) {
  Obstacle o;
  o.reference_point = shape.center;
  o.shape = std::move(shape);
  o.is_boundary = is_boundary;
  o.power = power;
  return o;
}

double characteristic_size(const ObstacleShape& shape) {
  double base = std::visit(
      [](const auto& k) -> double {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, Circle>) {
          return k.radius;
        } else if constexpr (std::is_same_v<T, Ellipse>) {
          return k.semi_axes.maxCoeff();
        } else if constexpr (std::is_same_v<T, Polygon>) {
          double m = 0.0;
          for (const auto& v : k.vertices) m = std::max(m, v.norm());
          return m;
        } else {
          return k.radius + std::abs(k.amplitude);
        }
      },
      shape.kind);
  return base + shape.margin;
}

namespace internal {

double ray_segment(const Vec& origin, const Vec& dir, const Vec& a, const Vec& b) {
  Vec e = b - a;
  double den = cross2(dir, e);
  if (std::abs(den) < 1e-15) return -1.0;
  Vec w = a - origin;
  double t = cross2(w, e) / den;
  double s = cross2(w, dir) / den;
  if (s < -1e-12 || s > 1.0 + 1e-12 || t <= 0.0) return -1.0;
  return t;
}

std::vector<Face> polygon_faces(const ObstacleShape& shape) {
  const auto& poly = std::get<Polygon>(shape.kind);
  const size_t n = poly.vertices.size();
  std::vector<Vec> normals(n);
  std::vector<double> offsets(n);
  for (size_t i = 0; i < n; ++i) {
    Vec a = shape.orientation * poly.vertices[i];
    Vec b = shape.orientation * poly.vertices[(i + 1) % n];
    Vec e = b - a;
    normals[i] = vec2(e[1], -e[0]).normalized();
    offsets[i] = normals[i].dot(a) + shape.margin;
  }
  // Vertex i of the offset polygon joins faces i-1 and i.
  std::vector<Vec> verts(n);
  for (size_t i = 0; i < n; ++i) {
    const Vec& n1 = normals[(i + n - 1) % n];
    const Vec& n2 = normals[i];
    double h1 = offsets[(i + n - 1) % n], h2 = offsets[i];
    double det = n1[0] * n2[1] - n1[1] * n2[0];
    if (std::abs(det) < 1e-14) {
      verts[i] = shape.orientation * poly.vertices[i] + shape.margin * n2;
    } else {
      verts[i] = vec2((h1 * n2[1] - h2 * n1[1]) / det, (n1[0] * h2 - n2[0] * h1) / det);
    }
  }
  std::vector<Face> faces(n);
  for (size_t i = 0; i < n; ++i) {
    faces[i].a = verts[i] + shape.center;
    faces[i].b = verts[(i + 1) % n] + shape.center;
    faces[i].normal = normals[i];
  }
  return faces;
}

RayHit ray_exit(const Vec& origin, const Vec& dir, const ObstacleShape& shape, bool want_normal) {
  RayHit hit;
  const Vec o = shape.orientation.transpose() * (origin - shape.center);
  const Vec u = shape.orientation.transpose() * dir;
  std::visit(
      [&](const auto& k) {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, Polygon>) {
          const size_t n = k.vertices.size();
          double best = kInfinity;
          for (size_t i = 0; i < n; ++i) {
            const Vec& a = k.vertices[i];
            Vec e = k.vertices[(i + 1) % n] - a;
            Vec nrm = vec2(e[1], -e[0]).normalized();
            double den = nrm.dot(u);
            if (den <= 1e-15) continue;
            double t = (nrm.dot(a) + shape.margin - nrm.dot(o)) / den;
            if (t < best) {
              best = t;
              hit.face = static_cast<int>(i);
              if (want_normal) hit.normal = shape.orientation * nrm;
            }
          }
          if (!std::isfinite(best) || best < -1e-9) {
            throw Error(ErrorCode::kDegenerateShape, "ray does not exit the polygon");
          }
          hit.radius = std::max(best, 0.0);
        } else {
          double r0 = 0.0;
          Vec n0;
          if constexpr (std::is_same_v<T, Circle>) {
            r0 = unit_sphere_exit(o / k.radius, u / k.radius);
            if (want_normal) n0 = (o + r0 * u).normalized();
          } else if constexpr (std::is_same_v<T, Ellipse>) {
            Vec os = o.cwiseQuotient(k.semi_axes), us = u.cwiseQuotient(k.semi_axes);
            r0 = unit_sphere_exit(os, us);
            if (want_normal) {
              Vec b = o + r0 * u;
              n0 = b.cwiseQuotient(k.semi_axes.cwiseProduct(k.semi_axes)).normalized();
            }
          } else {
            r0 = star_exit(k, o, u);
            if (want_normal) {
              Vec b = o + r0 * u;
              n0 = star_normal_local(k, std::atan2(b[1], b[0]));
            }
          }
          hit.radius = r0 + shape.margin;
          if (want_normal) hit.normal = shape.orientation * margin_normal(u, n0, r0, shape.margin);
        }
      },
      shape.kind);

  if (shape.hull_triangle) {
    const auto& tri = *shape.hull_triangle;
    double best = -1.0;
    int edge = -1;
    for (int i = 0; i < 3; ++i) {
      double t = ray_segment(origin, dir, tri[i], tri[(i + 1) % 3]);
      if (t > best) {
        best = t;
        edge = i;
      }
    }
    if (best > hit.radius) {
      hit.radius = best;
      hit.face = -1;
      if (want_normal) {
        Vec e = tri[(edge + 1) % 3] - tri[edge];
        Vec nrm = vec2(e[1], -e[0]).normalized();
        Vec centroid = (tri[0] + tri[1] + tri[2]) / 3.0;
        if (nrm.dot(tri[edge] - centroid) < 0.0) nrm = -nrm;
        hit.normal = nrm;
      }
    }
  }
  return hit;
}

}  // namespace internal

std::vector<Vec> polygon_world_vertices(const ObstacleShape& shape) {
  std::vector<Vec> out;
  for (const auto& f : internal::polygon_faces(shape)) out.push_back(f.a);
  return out;
}

double radius_along(const Vec& origin, const Vec& dir, const ObstacleShape& shape) {
  return internal::ray_exit(origin, dir, shape, false).radius;
}

bool inside_shape(const Vec& x, const ObstacleShape& shape) {
  Vec d = x - shape.center;
  double dist = d.norm();
  if (dist < 1e-15) return true;
  return dist < radius_along(shape.center, d / dist, shape);
}

void validate(const Obstacle& obs) {
  const int d = obs.dim();
  if (d < 2 || d > kMaxDim) {
    throw Error(ErrorCode::kUnsupportedDimension, "dimension must be in [2, 8]");
  }
  if (obs.reference_point.size() != d || obs.shape.orientation.rows() != d ||
      obs.shape.orientation.cols() != d) {
    throw Error(ErrorCode::kInvalidArgument, "inconsistent obstacle dimensions");
  }
  if (obs.power < 1) throw Error(ErrorCode::kInvalidArgument, "power coefficient must be >= 1");
  if (obs.shape.margin < 0.0) throw Error(ErrorCode::kInvalidArgument, "margin must be >= 0");
  std::visit(
      [&](const auto& k) {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, Circle>) {
          if (!(k.radius > 0.0)) throw Error(ErrorCode::kDegenerateShape, "radius must be > 0");
        } else if constexpr (std::is_same_v<T, Ellipse>) {
          if (k.semi_axes.size() != d || !(k.semi_axes.minCoeff() > 0.0)) {
            throw Error(ErrorCode::kDegenerateShape, "semi-axes must be positive");
          }
        } else if constexpr (std::is_same_v<T, Polygon>) {
          if (d != 2) throw Error(ErrorCode::kUnsupportedDimension, "polygons are planar");
          const size_t n = k.vertices.size();
          if (n < 3) throw Error(ErrorCode::kDegenerateShape, "polygon needs at least 3 vertices");
          for (size_t i = 0; i < n; ++i) {
            const Vec& a = k.vertices[i];
            const Vec& b = k.vertices[(i + 1) % n];
            const Vec& c = k.vertices[(i + 2) % n];
            if (cross2(b - a, c - b) <= 0.0) {
              throw Error(ErrorCode::kDegenerateShape, "polygon must be convex and CCW");
            }
          }
        } else {
          if (d != 2) throw Error(ErrorCode::kUnsupportedDimension, "star shapes are planar");
          if (!(k.radius > 0.0) || std::abs(k.amplitude) >= k.radius || k.petals < 1) {
            throw Error(ErrorCode::kDegenerateShape, "star needs |amplitude| < radius");
          }
        }
      },
      obs.shape.kind);
  if (!inside_shape(obs.reference_point, obs.shape)) {
    throw Error(ErrorCode::kInvalidArgument, "reference point must lie inside the shape");
  }
  if (obs.gap) {
    if (!obs.is_boundary) throw Error(ErrorCode::kInvalidArgument, "gap requires a boundary");
    for (const auto& e : obs.gap->edge_points) {
      if (e.size() != d || std::abs(gamma(e, obs) - 1.0) > kBoundaryTol) {
        throw Error(ErrorCode::kInvalidArgument, "gap edge points must lie on the boundary");
      }
    }
  }
}

}  // namespace geometry
}  // namespace dsavoid
