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
#include <random>

#include "dsavoid/dirspace.hpp"

namespace dsavoid::dirspace {

using geometry::Obstacle;

namespace {

constexpr double kPhiLimit = std::numbers::pi - 1e-6;
// Gradient steps shorter than this (in radians) hand over to the compass search.
constexpr double kStallStep = 1e-4;
constexpr double kCompassStart = 0.05;
constexpr double kCompassEnd = 1e-12;

Vec boundary_in_direction(const Obstacle& obs, const DirectionFrame& frame, const Vec& phi) {
  Vec u = from_direction_space(phi, frame);
  return obs.reference_point + geometry::radius_along(obs.reference_point, u, obs.shape) * u;
}

// Deepest point of max(gamma1, gamma2) over rays inside obs1, refined by a
// compass search.
void search_overlap(const Obstacle& obs1, const Obstacle& obs2, Vec& x, double& best) {
  const int d = obs1.dim();
  auto depth = [&](const Vec& p) {
    return std::max(geometry::gamma(p, obs1), geometry::gamma(p, obs2));
  };
  constexpr int kDirections = 720;
  constexpr int kFractions = 40;
  const Vec& c = obs1.reference_point;
  std::mt19937_64 rng(1);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (int k = 0; k < kDirections; ++k) {
    Vec u(d);
    if (d == 2) {
      double t = 2.0 * std::numbers::pi * (k + 0.5) / kDirections;
      u << std::cos(t), std::sin(t);
    } else {
      for (int i = 0; i < d; ++i) u[i] = normal(rng);
      u.normalize();
    }
    double r = geometry::radius_along(c, u, obs1.shape);
    for (int j = 1; j <= kFractions; ++j) {
      Vec p = c + (r * j / (kFractions + 1.0)) * u;
      double g = depth(p);
      if (g < best) {
        best = g;
        x = p;
      }
    }
  }
  const double scale = geometry::characteristic_size(obs1.shape);
  for (double step = 0.05 * scale; best >= 1.0 && step > 1e-12 * scale;) {
    bool moved = false;
    for (int i = 0; i < d; ++i) {
      for (double sign : {1.0, -1.0}) {
        Vec trial = x;
        trial[i] += sign * step;
        double g = depth(trial);
        if (g < best) {
          best = g;
          x = trial;
          moved = true;
        }
      }
    }
    if (!moved) step *= 0.5;
  }
}

}  // namespace

ClosestPoints closest_distance_descent(const Obstacle& obs1, const Obstacle& obs2,
                                       const DescentParams& params) {
  const int d = obs1.dim();
  if (geometry::gamma(obs1.reference_point, obs2) <= 1.0 ||
      geometry::gamma(obs2.reference_point, obs1) <= 1.0) {
    throw Error(ErrorCode::kIntersecting, "obstacles overlap, use common_reference_descent");
  }
  const DirectionFrame f1 = make_frame(obs2.reference_point - obs1.reference_point);
  const DirectionFrame f2 = make_frame(obs1.reference_point - obs2.reference_point);
  const int m = d - 1;

  auto points = [&](const Vec& phi1, const Vec& phi2) {
    return std::make_pair(boundary_in_direction(obs1, f1, phi1),
                          boundary_in_direction(obs2, f2, phi2));
  };
  auto value = [&](const Eigen::VectorXd& phi) {
    auto [p1, p2] = points(phi.head(m), phi.tail(m));
    return (p1 - p2).norm();
  };
  auto admissible = [&](const Eigen::VectorXd& phi) {
    return phi.head(m).norm() < kPhiLimit && phi.tail(m).norm() < kPhiLimit;
  };

  auto compass = [&](Eigen::VectorXd& phi, double& f) {
    for (double step = kCompassStart; step > kCompassEnd; step *= 0.5) {
      for (int i = 0; i < 2 * m; ++i) {
        for (double sign : {1.0, -1.0}) {
          Eigen::VectorXd trial = phi;
          trial[i] += sign * step;
          if (!admissible(trial)) continue;
          double ft = value(trial);
          if (ft < f - params.tolerance) {
            phi = trial;
            f = ft;
            return true;
          }
        }
      }
    }
    return false;
  };

  Eigen::VectorXd phi = Eigen::VectorXd::Zero(2 * m);
  double f = value(phi);
  const double h = 1e-6;
  double alpha = params.step;
  int it = 0;
  bool converged = false;
  for (; it < params.max_iterations; ++it) {
    Eigen::VectorXd grad(2 * m);
    for (int i = 0; i < 2 * m; ++i) {
      Eigen::VectorXd hi = phi, lo = phi;
      hi[i] += h;
      lo[i] -= h;
      grad[i] = (value(hi) - value(lo)) / (2.0 * h);
    }
    if (grad.norm() == 0.0) {
      converged = true;
      break;
    }
    alpha = std::min(params.step, 4.0 * alpha);
    bool accepted = false;
    double f_new = f;
    Eigen::VectorXd next;
    while (alpha > 1e-18) {
      next = phi - alpha * grad;
      if (admissible(next)) {
        f_new = value(next);
        if (f_new < f) {
          accepted = true;
          break;
        }
      }
      alpha *= 0.5;
    }
    if (accepted && f - f_new >= params.tolerance && alpha * grad.norm() >= kStallStep) {
      phi = next;
      f = f_new;
      continue;
    }
    if (accepted) {
      phi = next;
      f = f_new;
    }
    // Polygon vertices put kinks along the angle axes, where the gradient
    // step stalls. A compass search over the axes resolves them.
    if (!compass(phi, f)) {
      converged = true;
      break;
    }
  }
  if (!converged) throw Error(ErrorCode::kNoConvergence, "closest-distance descent");

  auto [p1, p2] = points(phi.head(m), phi.tail(m));
  if (f <= 1e-12 || geometry::gamma(p1, obs2) < 1.0 || geometry::gamma(p2, obs1) < 1.0) {
    throw Error(ErrorCode::kIntersecting, "obstacles overlap, use common_reference_descent");
  }
  return {p1, p2, f, it};
}

Vec common_reference_descent(const Obstacle& obs1, const Obstacle& obs2,
                             const DescentParams& params, std::vector<Vec>* iterates) {
  if (!(params.gamma_base > 1.0)) throw Error(ErrorCode::kInvalidArgument, "gamma_base must be > 1");
  auto gammas = [&](const Vec& x) {
    return std::make_pair(geometry::gamma(x, obs1), geometry::gamma(x, obs2));
  };

  // Start at the deepest sample on the segment joining the reference points.
  const Vec& a = obs1.reference_point;
  const Vec& b = obs2.reference_point;
  Vec x;
  double best = geometry::kInfinity;
  constexpr int kSamples = 400;
  for (int i = 0; i <= kSamples; ++i) {
    Vec p = a + (b - a) * (static_cast<double>(i) / kSamples);
    auto [g1, g2] = gammas(p);
    double g = std::max(g1, g2);
    if (g < best) {
      best = g;
      x = p;
    }
  }
  if (!(best < 1.0) && params.search_overlap) search_overlap(obs1, obs2, x, best);
  if (!(best < 1.0)) throw Error(ErrorCode::kDisjoint, "no common interior point found");

  const double gb = params.gamma_base;
  auto value = [&](const Vec& p) {
    auto [g1, g2] = gammas(p);
    return gb / (gb - g1) + gb / (gb - g2);
  };
  auto inside_both = [&](const Vec& p) {
    auto [g1, g2] = gammas(p);
    return std::max(g1, g2) < 1.0;
  };

  const double scale = std::min(geometry::characteristic_size(obs1.shape),
                                geometry::characteristic_size(obs2.shape));
  const double h = 1e-6 * scale;
  const int d = static_cast<int>(x.size());
  double f = value(x);
  double alpha = params.step * scale;
  if (iterates) iterates->push_back(x);
  for (int it = 0; it < params.max_iterations; ++it) {
    Vec grad(d);
    for (int i = 0; i < d; ++i) {
      Vec hi = x, lo = x;
      hi[i] += h;
      lo[i] -= h;
      grad[i] = (value(hi) - value(lo)) / (2.0 * h);
    }
    double gn = grad.norm();
    if (!(gn > 0.0) || !std::isfinite(gn)) break;
    alpha = std::min(params.step * scale, 4.0 * alpha);
    bool accepted = false;
    Vec next;
    double f_new = f;
    while (alpha > 1e-18 * scale) {
      next = x - alpha * grad / gn;
      if (inside_both(next)) {
        f_new = value(next);
        if (f_new < f) {
          accepted = true;
          break;
        }
      }
      alpha *= 0.5;
    }
    if (!accepted) break;
    double delta = f - f_new;
    x = next;
    f = f_new;
    if (iterates) iterates->push_back(x);
    if (delta < params.tolerance) break;
  }
  return x;
}

CurvatureReport curvature_condition(const Obstacle& obs, const Obstacle& boundary, int samples) {
  if (!boundary.is_boundary) throw Error(ErrorCode::kInvalidArgument, "second argument must be a boundary");
  if (obs.dim() != 2) throw Error(ErrorCode::kUnsupportedDimension, "curvature sampling is planar");
  CurvatureReport report;
  report.samples = samples;
  report.obstacle_max = -geometry::kInfinity;
  report.boundary_min = geometry::kInfinity;
  auto sample = [&](const Obstacle& o, double& extreme, bool take_max) {
    for (int k = 0; k < samples; ++k) {
      double theta = 2.0 * std::numbers::pi * (k + 0.5) / samples;
      Vec p = geometry::boundary_at_angle(theta, o);
      Vec n = geometry::free_space_normal(p + 1e-9 * (p - o.reference_point), o);
      Vec dir = vec2(-n[1], n[0]);
      try {
        double c = geometry::local_curvature(p, dir, o);
        extreme = take_max ? std::max(extreme, c) : std::min(extreme, c);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::kNondifferentiable) throw;
        ++report.skipped;
      }
    }
  };
  sample(obs, report.obstacle_max, true);
  sample(boundary, report.boundary_min, false);
  report.holds = report.obstacle_max < report.boundary_min;
  return report;
}

}  // namespace dsavoid::dirspace
