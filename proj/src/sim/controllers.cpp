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
#include "dsavoid/sim.hpp"

namespace dsavoid::sim {
namespace {

Vec clamp_speed(const Vec& v, double v_max) {
  double s = v.norm();
  return s > v_max ? Vec(v * (v_max / s)) : v;
}

bool may_intersect(const Obstacle& a, const Obstacle& b) {
  double reach = geometry::characteristic_size(a.shape) + geometry::characteristic_size(b.shape);
  return (a.center() - b.center()).norm() < reach;
}

// A shared reference point must stay inside both shapes while they deform
// over a step, so only points clearly inside are accepted.
constexpr double kCommonGamma = 0.8;

bool inside_both(const Vec& p, const Obstacle& a, const Obstacle& b) {
  return geometry::gamma(p, a) < kCommonGamma && geometry::gamma(p, b) < kCommonGamma;
}

}  // namespace

DynamicController::DynamicController(NominalDS ds, ModulationParams params,
                                     std::optional<AgentLimits> limits, bool common_reference)
    : ds_(std::move(ds)), params_(params), limits_(limits), common_reference_(common_reference) {
  modulation::validate(params_);
}

void DynamicController::prepare(std::vector<Obstacle>& env, const Vec& /*x*/, double /*t*/) {
  if (!common_reference_ || env.size() != 2 || env[0].is_boundary || env[1].is_boundary) return;
  Obstacle& a = env[0];
  Obstacle& b = env[1];
  a.reference_point = a.center();
  b.reference_point = b.center();
  if (!may_intersect(a, b)) {
    common_ref_.reset();
    return;
  }
  // Keep the previous common point while it lies in both obstacles.
  if (!common_ref_ || !inside_both(*common_ref_, a, b)) {
    try {
      dirspace::DescentParams dp;
      dp.tolerance = 1e-8;
      dp.max_iterations = 500;
      // Bounded per-step cost: only the segment between centers is searched.
      dp.search_overlap = false;
      common_ref_ = dirspace::common_reference_descent(a, b, dp);
    } catch (const Error&) {
      common_ref_.reset();
    }
    if (common_ref_ && !inside_both(*common_ref_, a, b)) common_ref_.reset();
  }
  if (common_ref_) {
    a.reference_point = *common_ref_;
    b.reference_point = *common_ref_;
  }
}

Vec project_to_free_space(const Vec& x, const std::vector<Obstacle>& env, double tol) {
  // Overlapping obstacles may push the point into each other; a few passes
  // settle it in the crevice.
  constexpr int kPasses = 16;
  Vec p = x;
  for (int pass = 0; pass < kPasses; ++pass) {
    bool moved = false;
    for (const auto& obs : env) {
      double g = geometry::gamma(p, obs);
      if (g >= 1.0) continue;
      if (g < 1.0 - tol) {
        throw Error(ErrorCode::kInsideObstacle, "penetration beyond contact tolerance");
      }
      Vec d = p - obs.reference_point;
      double radius = geometry::local_radius(p, obs);
      double scale = obs.is_boundary ? 1.0 - 1e-12 : 1.0 + 1e-12;
      p = obs.reference_point + (radius * scale / d.norm()) * d;
      moved = true;
    }
    if (!moved) return p;
  }
  throw Error(ErrorCode::kInsideObstacle, "no contact point outside all obstacles");
}

Vec DynamicController::velocity(const Vec& x_in, const std::vector<Obstacle>& env, double /*t*/) {
  // States within the contact tolerance are evaluated on the surface.
  const Vec x = project_to_free_space(x_in, env, kContactTolerance);
  Vec f = modulation::nominal_velocity(x, ds_);
  modulation::DynamicResult res = modulation::evaluate_dynamic(x, f, env, params_);
  if (!limits_) return res.velocity;
  if (res.dominant < 0) return clamp_speed(res.velocity, limits_->v_max);
  try {
    return modulation::safe_velocity(res.velocity, res.dominant_geometry, res.relative_total,
                                     *limits_);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kObstacleTooFast) throw;
    // Speed assumption violated: escape along the normal at full speed.
    ++too_fast_;
    return limits_->v_max * res.dominant_geometry.normal;
  }
}

double DynamicController::speed_limit() const {
  return limits_ ? limits_->v_max : ds_.max_speed;
}

Vec baseline_orthogonal(const Vec& x, const Vec& f, const std::vector<Obstacle>& env,
                        const ModulationParams& params) {
  ModulationParams p = params;
  p.basis = modulation::BasisKind::kOrthogonal;
  return modulation::modulate_dynamic(x, f, env, p);
}

Vec baseline_potential_field(const Vec& x, const Vec& f, const std::vector<Obstacle>& env,
                             const PotentialFieldParams& params) {
  Vec v = f;
  for (const auto& obs : env) {
    double g = geometry::gamma(x, obs);
    if (g <= 1.0) throw Error(ErrorCode::kCollided, "state inside an obstacle");
    if (std::isinf(g)) continue;
    double dist = (x - obs.reference_point).norm();
    double rho = std::abs(dist - geometry::local_radius(x, obs));
    if (rho >= params.range) continue;
    Vec n = geometry::free_space_normal(x, obs);
    v += params.gain * (1.0 / rho - 1.0 / params.range) / (rho * rho) * n;
  }
  return v;
}

PotentialFieldController::PotentialFieldController(NominalDS ds, PotentialFieldParams params,
                                                   double v_max)
    : ds_(std::move(ds)), params_(params), v_max_(v_max) {
  if (!(params_.gain >= 0.0) || !(params_.range > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "potential field needs gain >= 0 and range > 0");
  }
}

Vec PotentialFieldController::velocity(const Vec& x, const std::vector<Obstacle>& env, double) {
  Vec f = modulation::nominal_velocity(x, ds_);
  return clamp_speed(baseline_potential_field(x, f, env, params_), v_max_);
}

DriveCommand nonholonomic_adapter(const Vec& velocity, double heading, double offset) {
  if (!(offset > 0.0)) throw Error(ErrorCode::kInvalidArgument, "offset must be > 0");
  if (velocity.size() != 2) throw Error(ErrorCode::kUnsupportedDimension, "planar robots only");
  Vec dir = vec2(std::cos(heading), std::sin(heading));
  return {velocity.dot(dir), cross2(dir, velocity) / offset};
}

}  // namespace dsavoid::sim
