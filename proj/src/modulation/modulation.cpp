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
#include "dsavoid/modulation.hpp"

namespace dsavoid::modulation {

void validate(const ModulationParams& params) {
  if (!(params.reactivity > 0.0)) throw Error(ErrorCode::kInvalidArgument, "reactivity must be > 0");
  if (!(params.repulsion >= 1.0)) throw Error(ErrorCode::kInvalidArgument, "repulsion must be >= 1");
  if (params.weight_power < 1) throw Error(ErrorCode::kInvalidArgument, "weight power must be >= 1");
}

Vec nominal_velocity(const Vec& x, const NominalDS& ds) {
  Vec f = -ds.gain * (x - ds.attractor);
  double speed = f.norm();
  if (speed > ds.max_speed) f *= ds.max_speed / speed;
  return f;
}

Mat basis_matrix(const Vec& /*x*/, const LocalGeometry& geo) {
  const int d = static_cast<int>(geo.normal.size());
  double c = geo.reference_direction.dot(geo.normal);
  if (geo.is_boundary) c = -c;
  if (!(c > 1e-12)) throw Error(ErrorCode::kRankDeficient, "reference direction is tangent to the surface");
  Mat e(d, d);
  e.col(0) = geo.reference_direction;
  e.rightCols(d - 1) = geo.tangents;
  return e;
}

Eigenvalues eigenvalues(double gamma, const ModulationParams& params) {
  if (gamma < 1.0) throw Error(ErrorCode::kInsideObstacle, "gamma below one");
  if (std::isinf(gamma)) return {1.0, 1.0};
  double inv = 1.0 / std::pow(gamma, 1.0 / params.reactivity);
  return {1.0 - inv, 1.0 + inv};
}

double repulsive_lambda_r(double gamma, const Vec& f, const Vec& r, const ModulationParams& params) {
  if (gamma < 1.0) throw Error(ErrorCode::kInsideObstacle, "gamma below one");
  if (f.dot(r) >= 0.0) return 1.0;
  if (std::isinf(gamma)) return 1.0;
  return 1.0 - std::pow(params.repulsion / gamma, 1.0 / params.reactivity);
}

Mat modulation_matrix(const Vec& f, const LocalGeometry& geo, bool is_boundary,
                      const ModulationParams& params) {
  const int d = static_cast<int>(f.size());
  if (geo.gamma < 1.0) throw Error(ErrorCode::kInsideObstacle, "gamma below one");
  if (std::isinf(geo.gamma)) return Mat::Identity(d, d);
  Mat e(d, d);
  Vec radial;
  if (params.basis == BasisKind::kReference) {
    e = basis_matrix(f, geo);
    // Radial axis oriented into free space.
    radial = is_boundary ? Vec(-geo.reference_direction) : geo.reference_direction;
  } else {
    e.col(0) = geo.normal;
    e.rightCols(d - 1) = geo.tangents;
    radial = geo.normal;
  }
  Eigenvalues lam = eigenvalues(geo.gamma, params);
  double lambda_r = lam.radial;
  if (params.repulsion > 1.0 || !params.tail_effect) {
    lambda_r = repulsive_lambda_r(geo.gamma, f, radial, params);
  }
  Vec diag = Vec::Constant(d, lam.tangent);
  diag[0] = lambda_r;
  if (params.basis == BasisKind::kOrthogonal) {
    return e * diag.asDiagonal() * e.transpose();
  }
  return e * diag.asDiagonal() * e.partialPivLu().inverse();
}

Vec apply_friction(const Vec& velocity, const Vec& f, double gamma) {
  double speed = velocity.norm();
  if (speed == 0.0) return Vec::Zero(velocity.size());
  double lambda_f = std::isinf(gamma) ? 1.0 : 1.0 - 1.0 / gamma;
  return lambda_f * (f.norm() / speed) * velocity;
}

Vec modulate_single(const Vec& x, const Vec& f, const Obstacle& obs, const ModulationParams& params) {
  const Obstacle* eff = &obs;
  Obstacle guided;
  if (obs.gap) {
    Vec g = geometry::guiding_reference_point(x, obs);
    if ((g - x).norm() == 0.0) return f;
    guided = obs;
    guided.reference_point = g;
    eff = &guided;
  }
  if (eff->is_boundary && (x - eff->reference_point).norm() == 0.0) return f;
  LocalGeometry geo = geometry::local_geometry(x, *eff, params.weight_power);
  Vec out = modulation_matrix(f, geo, eff->is_boundary, params) * f;
  if (params.friction) out = apply_friction(out, f, geo.gamma);
  return out;
}

std::vector<double> obstacle_weights(const std::vector<double>& gammas) {
  const size_t n = gammas.size();
  std::vector<double> w(n, 0.0);
  size_t touching = 0;
  for (double g : gammas) touching += g <= 1.0 ? 1 : 0;
  if (touching > 0) {
    for (size_t i = 0; i < n; ++i) w[i] = gammas[i] <= 1.0 ? 1.0 / touching : 0.0;
    return w;
  }
  double sum = 0.0;
  for (size_t i = 0; i < n; ++i) {
    w[i] = std::isinf(gammas[i]) ? 0.0 : 1.0 / (gammas[i] - 1.0);
    sum += w[i];
  }
  if (sum > 0.0) {
    for (double& wi : w) wi /= sum;
  }
  return w;
}

Vec combine_multi(const Vec& /*x*/, const Vec& f, const std::vector<Vec>& velocities,
                  const std::vector<double>& weights) {
  if (velocities.empty()) return f;
  if (velocities.size() == 1) return velocities[0];
  double wsum = 0.0;
  double magnitude = 0.0;
  Vec linear = Vec::Zero(f.size());
  for (size_t i = 0; i < velocities.size(); ++i) {
    wsum += weights[i];
    magnitude += weights[i] * velocities[i].norm();
    linear += weights[i] * velocities[i];
  }
  if (!(wsum > 0.0)) return f;
  double fn = f.norm();
  if (fn < 1e-12) return linear;

  const Vec base = f / fn;
  std::vector<Vec> dirs;
  std::vector<double> ws;
  bool antipodal = false;
  for (size_t i = 0; i < velocities.size(); ++i) {
    double vn = velocities[i].norm();
    if (weights[i] <= 0.0 || vn == 0.0) continue;
    Vec dir = velocities[i] / vn;
    if (dir.dot(base) < -1.0 + dirspace::kAntipodalTol) antipodal = true;
    dirs.push_back(dir);
    ws.push_back(weights[i]);
  }
  if (dirs.empty()) return Vec::Zero(f.size());
  if (antipodal) {
    // The direction-space mean is undefined; fall back to the linear mean.
    double ln = linear.norm();
    return ln > 0.0 ? Vec(magnitude * linear / ln) : Vec(Vec::Zero(f.size()));
  }
  return magnitude * dirspace::weighted_direction_mean(dirs, ws, base);
}

}  // namespace dsavoid::modulation
