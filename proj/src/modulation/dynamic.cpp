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

#include "dsavoid/modulation.hpp"

namespace dsavoid::modulation {
namespace {

bool is_static(const Obstacle& obs) {
  auto zero = [](const Vec& v) { return v.size() == 0 || v.isZero(0.0); };
  const auto& m = obs.motion;
  const auto& d = obs.deformation;
  return zero(m.linear) && zero(m.angular) && zero(d.linear) && zero(d.angular) &&
         d.radial_rate == 0.0 && zero(d.axes_rate);
}

}  // namespace

Vec relative_velocity(const Vec& x, const Obstacle& obs) {
  const int dim = static_cast<int>(x.size());
  Vec v = Vec::Zero(dim);
  if (is_static(obs)) return v;
  const auto& m = obs.motion;
  if (m.linear.size() == dim) v += m.linear;
  if (m.angular.size() > 0) v += angular_cross(m.angular, x - obs.center());

  const auto& def = obs.deformation;
  const bool deforms = def.radial_rate != 0.0 || def.axes_rate.size() > 0 ||
                       def.linear.size() > 0 || def.angular.size() > 0;
  if (!deforms || (x - obs.reference_point).norm() == 0.0) return v;

  const Vec r = geometry::reference_direction(x, obs);
  const Vec b = geometry::boundary_point(x, obs);
  Vec surface = Vec::Zero(dim);
  if (def.linear.size() == dim) surface += def.linear;
  if (def.angular.size() > 0) surface += angular_cross(def.angular, x - b);
  if (def.radial_rate != 0.0) {
    if (std::holds_alternative<geometry::Circle>(obs.shape.kind)) {
      Vec n_out = (b - obs.center()).normalized();
      surface += def.radial_rate * n_out;
    } else {
      surface += def.radial_rate * r;
    }
  }
  if (def.axes_rate.size() == dim) {
    if (const auto* e = std::get_if<geometry::Ellipse>(&obs.shape.kind)) {
      const Mat& rot = obs.shape.orientation;
      Vec local = rot.transpose() * (b - obs.center());
      surface += rot * def.axes_rate.cwiseQuotient(e->semi_axes).cwiseProduct(local);
    }
  }
  if (def.repulsive) {
    // Only the part that shrinks free space matters.
    Vec n = geometry::free_space_normal(x, obs);
    double vn = surface.dot(n);
    surface = vn > 0.0 ? Vec(vn * n) : Vec(Vec::Zero(dim));
  }
  return v + surface;
}

DynamicResult evaluate_dynamic(const Vec& x, const Vec& f, const std::vector<Obstacle>& env,
                               const ModulationParams& params) {
  const int dim = static_cast<int>(x.size());
  const size_t n = env.size();
  DynamicResult res;
  res.relative_total = Vec::Zero(dim);
  if (n == 0) {
    res.velocity = f;
    return res;
  }

  std::vector<LocalGeometry> geos(n);
  std::vector<char> identity(n, 0);
  res.gammas.resize(n);
  for (size_t i = 0; i < n; ++i) {
    const Obstacle& obs = env[i];
    double g = geometry::gamma(x, obs);
    if (g < 1.0) throw Error(ErrorCode::kInsideObstacle, "state inside an obstacle");
    res.gammas[i] = g;
    const Obstacle* eff = &obs;
    Obstacle guided;
    if (obs.gap) {
      Vec ref = geometry::guiding_reference_point(x, obs);
      guided = obs;
      guided.reference_point = ref;
      eff = &guided;
    }
    if (eff->is_boundary && (x - eff->reference_point).norm() == 0.0) {
      identity[i] = 1;
      geos[i].gamma = geometry::kInfinity;
      continue;
    }
    geos[i] = geometry::local_geometry(x, *eff, params.weight_power);
  }
  res.weights = obstacle_weights(res.gammas);

  for (size_t i = 0; i < n; ++i) {
    if (res.weights[i] > 0.0) res.relative_total += res.weights[i] * relative_velocity(x, env[i]);
  }
  double best = -1.0;
  for (size_t i = 0; i < n; ++i) {
    if (res.weights[i] > best && !identity[i]) {
      best = res.weights[i];
      res.dominant = static_cast<int>(i);
    }
  }
  if (res.dominant >= 0) res.dominant_geometry = geos[res.dominant];

  const Vec shifted = f - res.relative_total;
  if (shifted.norm() < 1e-12) {
    res.velocity = res.relative_total;
    return res;
  }
  std::vector<Vec> vels(n);
  for (size_t i = 0; i < n; ++i) {
    if (identity[i]) {
      vels[i] = shifted;
      continue;
    }
    vels[i] = modulation_matrix(shifted, geos[i], env[i].is_boundary, params) * shifted;
    if (params.friction) vels[i] = apply_friction(vels[i], shifted, geos[i].gamma);
  }
  res.velocity = combine_multi(x, shifted, vels, res.weights) + res.relative_total;
  return res;
}

Vec modulate_dynamic(const Vec& x, const Vec& f, const std::vector<Obstacle>& env,
                     const ModulationParams& params) {
  return evaluate_dynamic(x, f, env, params).velocity;
}

Vec safe_velocity(const Vec& velocity, const LocalGeometry& geo, const Vec& obstacle_velocity,
                  const AgentLimits& limits) {
  const double vmax = limits.v_max;
  if (!(vmax > 0.0)) throw Error(ErrorCode::kInvalidArgument, "v_max must be > 0");
  const Vec& n = geo.normal;
  const double vn = obstacle_velocity.dot(n);
  if (vn >= vmax) throw Error(ErrorCode::kObstacleTooFast, "obstacle surface outruns v_max");
  const double speed = velocity.norm();
  if (speed == 0.0) {
    // No direction to crop; follow the obstacle within the speed limit.
    double on = obstacle_velocity.norm();
    return on > vmax ? Vec(vmax * obstacle_velocity / on) : obstacle_velocity;
  }
  if (speed <= vmax) return velocity;
  if (velocity.dot(n) / speed < vn / vmax) {
    Vec t = velocity - velocity.dot(n) * n;
    double tn = t.norm();
    t = tn > 1e-12 ? Vec(t / tn) : Vec(geo.tangents.col(0));
    return vn * n + std::sqrt(vmax * vmax - vn * vn) * t;
  }
  return vmax * velocity / speed;
}

}  // namespace dsavoid::modulation
