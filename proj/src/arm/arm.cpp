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
#include "dsavoid/arm.hpp"

#include <algorithm>
#include <cmath>

namespace dsavoid::arm {

void validate(const ArmModel& model) {
  if (model.lengths.empty()) throw Error(ErrorCode::kInvalidArgument, "arm needs at least one link");
  for (double l : model.lengths) {
    if (!(l > 0.0)) throw Error(ErrorCode::kInvalidArgument, "link lengths must be > 0");
  }
  if (model.q.size() != model.links()) {
    throw Error(ErrorCode::kInvalidArgument, "one joint angle per link required");
  }
  if (model.sections < 1) throw Error(ErrorCode::kInvalidArgument, "sections must be >= 1");
  if (model.base.size() != 2) throw Error(ErrorCode::kUnsupportedDimension, "arms are planar");
}

void validate(const ArmWeightParams& params) {
  if (!(params.gamma_cutoff > 1.0)) throw Error(ErrorCode::kInvalidArgument, "cutoff must be > 1");
  if (!(params.link_factor > 0.0)) throw Error(ErrorCode::kInvalidArgument, "link factor must be > 0");
}

ArmPoses forward_kinematics(const ArmModel& model) {
  const int n = model.links();
  ArmPoses poses;
  poses.joints.reserve(n + 1);
  poses.joints.push_back(model.base);
  double angle = model.base_angle;
  for (int l = 0; l < n; ++l) {
    angle += model.q[l];
    const Vec& root = poses.joints.back();
    Vec dir = vec2(std::cos(angle), std::sin(angle));
    Vec tip = root + model.lengths[l] * dir;
    std::vector<Vec> sec(model.sections + 1);
    for (int s = 0; s <= model.sections; ++s) {
      sec[s] = root + (model.lengths[l] * s / model.sections) * dir;
    }
    sec.back() = tip;
    poses.sections.push_back(std::move(sec));
    poses.joints.push_back(tip);
  }
  return poses;
}

Eigen::MatrixXd jacobian_position(const ArmModel& model, int link, const Vec& point) {
  if (link < 1 || link > model.links()) throw Error(ErrorCode::kInvalidArgument, "link out of range");
  ArmPoses poses = forward_kinematics(model);
  Eigen::MatrixXd j(2, link);
  for (int i = 0; i < link; ++i) {
    Vec lever = point - poses.joints[i];
    j(0, i) = -lever[1];
    j(1, i) = lever[0];
  }
  return j;
}

Eigen::MatrixXd pseudo_inverse(const Eigen::MatrixXd& a) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& s = svd.singularValues();
  double tol = 1e-12 * std::max(a.rows(), a.cols()) * (s.size() ? s[0] : 0.0);
  Eigen::VectorXd inv = s;
  for (int i = 0; i < s.size(); ++i) inv[i] = s[i] > tol ? 1.0 / s[i] : 0.0;
  return svd.matrixV() * inv.asDiagonal() * svd.matrixU().transpose();
}

double gamma_danger(const Vec& x, const std::vector<Obstacle>& env) {
  double g = geometry::kInfinity;
  for (const auto& obs : env) g = std::min(g, geometry::gamma(x, obs));
  return g;
}

double gamma_weight(double gamma_d, const ArmWeightParams& params) {
  constexpr double kGammaMin = 1.0;
  if (gamma_d <= kGammaMin) throw Error(ErrorCode::kCollided, "section point touches an obstacle");
  if (gamma_d >= params.gamma_cutoff) return 0.0;
  return (params.gamma_cutoff - kGammaMin) / (gamma_d - kGammaMin) - 1.0;
}

std::vector<double> link_weights(const Eigen::VectorXd& qdot_goal,
                                 const std::vector<std::vector<double>>& danger,
                                 const ArmWeightParams& params) {
  const int n = static_cast<int>(danger.size());
  std::vector<double> w(n, 0.0);
  double sum = 0.0;
  for (int l = 0; l < n; ++l) {
    double max_w = 0.0;
    for (double d : danger[l]) max_w = std::max(max_w, d);
    w[l] = params.link_factor * std::abs(qdot_goal[l]) * (static_cast<double>(l + 1) / n) * max_w;
    sum += w[l];
  }
  if (sum > 1.0) {
    for (double& wl : w) wl /= sum;
  }
  return w;
}

std::vector<double> section_weights(const std::vector<double>& danger_link) {
  const int ns = static_cast<int>(danger_link.size());
  std::vector<double> w(ns);
  double sum = 0.0;
  for (int s = 0; s < ns; ++s) {
    w[s] = (static_cast<double>(s + 1) / ns) * danger_link[s];
    sum += w[s];
  }
  if (!(sum > 0.0)) return std::vector<double>(ns, 1.0 / ns);
  for (double& ws : w) ws /= sum;
  return w;
}

LinkVelocity link_avoidance_velocities(const std::vector<Vec>& section_velocities,
                                       const std::vector<double>& weights,
                                       const std::vector<Vec>& section_points, const Vec& root) {
  LinkVelocity out;
  out.linear = Vec::Zero(2);
  for (size_t s = 0; s < weights.size(); ++s) out.linear += weights[s] * section_velocities[s];
  for (size_t s = 0; s < weights.size(); ++s) {
    out.angular +=
        weights[s] * cross2(section_points[s] - root, section_velocities[s] - out.linear);
  }
  return out;
}

JointControl joint_control(const ArmModel& model, const std::vector<Obstacle>& env,
                           const modulation::NominalDS& ds,
                           const modulation::ModulationParams& mod,
                           const ArmWeightParams& params) {
  const int n = model.links();
  const int ns = model.sections;
  ArmPoses poses = forward_kinematics(model);
  JointControl out;

  // Goal command from the modulated end-effector velocity.
  const Vec& ee = poses.joints.back();
  Vec ee_vel = modulation::modulate_dynamic(ee, modulation::nominal_velocity(ee, ds), env, mod);
  Eigen::VectorXd ee_v = ee_vel;
  out.qdot_goal = pseudo_inverse(jacobian_position(model, n, ee)) * ee_v;

  std::vector<std::vector<double>> danger(n, std::vector<double>(ns));
  for (int l = 0; l < n; ++l) {
    for (int s = 1; s <= ns; ++s) {
      double g = gamma_danger(poses.sections[l][s], env);
      out.min_gamma = std::min(out.min_gamma, g);
      danger[l][s - 1] = gamma_weight(g, params);
    }
  }
  out.link_weights = link_weights(out.qdot_goal, danger, params);
  out.section_weights.assign(n, std::vector<double>(ns, 0.0));

  double wsum = 0.0;
  for (double w : out.link_weights) wsum += w;
  out.qdot = (1.0 - wsum) * out.qdot_goal;

  double w_before = 0.0;
  for (int l = 1; l <= n; ++l) {
    const double wl = out.link_weights[l - 1];
    if (wl > 0.0) {
      std::vector<double> ws = section_weights(danger[l - 1]);
      out.section_weights[l - 1] = ws;
      std::vector<Vec> pts(poses.sections[l - 1].begin() + 1, poses.sections[l - 1].end());
      std::vector<Vec> vels(ns);
      for (int s = 0; s < ns; ++s) {
        vels[s] = modulation::modulate_dynamic(pts[s], modulation::nominal_velocity(pts[s], ds),
                                               env, mod);
      }
      const Vec& root = poses.sections[l - 1][0];
      LinkVelocity lv = link_avoidance_velocities(vels, ws, pts, root);

      // Weighted rigid-body fit: linear velocity at the weighted centroid and
      // angular momentum about it.
      Vec centroid = Vec::Zero(2);
      for (int s = 0; s < ns; ++s) centroid += ws[s] * pts[s];
      double inertia = 0.0;
      for (int s = 0; s < ns; ++s) inertia += ws[s] * (pts[s] - centroid).squaredNorm();
      Eigen::MatrixXd jc = jacobian_position(model, l, centroid);
      Eigen::VectorXd qm;
      const double scale = model.lengths[l - 1];
      if (inertia > 1e-12 * scale * scale) {
        double sq = std::sqrt(inertia);
        Eigen::MatrixXd a(3, l);
        a.topRows(2) = jc;
        a.row(2).setConstant(sq);
        Eigen::Vector3d b(lv.linear[0], lv.linear[1], lv.angular / sq);
        qm = pseudo_inverse(a) * b;
      } else {
        Eigen::Vector2d b(lv.linear[0], lv.linear[1]);
        qm = pseudo_inverse(jc) * b;
      }
      if (l == 1) {
        out.qdot[0] += wl * qm[0];
      } else {
        out.qdot.head(l) += wl * qm;
      }
    }
    if (l > 1) {
      // Restore the goal motion at the tip of link l with joint l.
      Eigen::VectorXd diff = (out.qdot_goal - out.qdot).head(l);
      Eigen::VectorXd v_delta = jacobian_position(model, l, poses.joints[l]) * diff;
      Vec link_dir = (poses.joints[l] - poses.joints[l - 1]) / model.lengths[l - 1];
      double q_delta = cross2(link_dir, Vec(v_delta)) / model.lengths[l - 1];
      out.qdot[l - 1] += q_delta * w_before;
    }
    w_before += wl;
  }

  for (int l = 0; l < n; ++l) {
    double ssum = 0.0;
    for (double w : out.section_weights[l]) ssum += w;
    out.weight_budget += out.link_weights[l] * ssum;
  }
  return out;
}

}  // namespace dsavoid::arm
