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
#include "dsavoid/modulation.hpp"

namespace dsavoid::arm {

using geometry::Obstacle;

// Planar serial chain with revolute joints. Joint l rotates link l; angles are
// relative to the previous link.
struct ArmModel {
  Vec base = vec2(0.0, 0.0);
  double base_angle = 0.0;
  std::vector<double> lengths;
  Eigen::VectorXd q;
  // Section points per link, excluding the link root.
  int sections = 3;

  int links() const { return static_cast<int>(lengths.size()); }
};

struct ArmWeightParams {
  double gamma_cutoff = 3.0;
  double link_factor = 1.0;
};

void validate(const ArmModel& model);
void validate(const ArmWeightParams& params);

struct ArmPoses {
  // joints[0] is the base, joints[l] the tip of link l.
  std::vector<Vec> joints;
  // sections[l-1][s] for s = 0..N^S, where s = 0 is the link root.
  std::vector<std::vector<Vec>> sections;
};

ArmPoses forward_kinematics(const ArmModel& model);

// Position Jacobian (2 x link) of a point rigidly attached to link `link`
// (1-based).
Eigen::MatrixXd jacobian_position(const ArmModel& model, int link, const Vec& point);

Eigen::MatrixXd pseudo_inverse(const Eigen::MatrixXd& a);

double gamma_danger(const Vec& x, const std::vector<Obstacle>& env);

double gamma_weight(double gamma_d, const ArmWeightParams& params);

// danger[l][s] holds the danger weights of section points s = 1..N^S of link l.
std::vector<double> link_weights(const Eigen::VectorXd& qdot_goal,
                                 const std::vector<std::vector<double>>& danger,
                                 const ArmWeightParams& params);

std::vector<double> section_weights(const std::vector<double>& danger_link);

struct LinkVelocity {
  Vec linear;
  double angular = 0.0;
};

// Rigid-body summary of the section velocities of one link. The angular term
// is positive for counter-clockwise rotation about the root.
LinkVelocity link_avoidance_velocities(const std::vector<Vec>& section_velocities,
                                       const std::vector<double>& weights,
                                       const std::vector<Vec>& section_points, const Vec& root);

struct JointControl {
  Eigen::VectorXd qdot;
  Eigen::VectorXd qdot_goal;
  std::vector<double> link_weights;
  std::vector<std::vector<double>> section_weights;
  double min_gamma = geometry::kInfinity;
  // Σ_l w^L_l Σ_s w^S_{l,s}.
  double weight_budget = 0.0;
};

JointControl joint_control(const ArmModel& model, const std::vector<Obstacle>& env,
                           const modulation::NominalDS& ds,
                           const modulation::ModulationParams& mod = {},
                           const ArmWeightParams& params = {});

}  // namespace dsavoid::arm
