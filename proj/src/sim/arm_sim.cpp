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

#include "dsavoid/sim.hpp"

namespace dsavoid::sim {

ArmResult simulate_arm(const ArmScenario& scenario, int record_stride) {
  arm::validate(scenario.model);
  arm::validate(scenario.weights);
  if (!(scenario.dt > 0.0) || !(scenario.t_max > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "dt and t_max must be > 0");
  }
  ArmResult res;
  arm::ArmModel model = scenario.model;
  NominalDS ds{scenario.goal, scenario.gain, scenario.max_speed};
  const ModulationParams mod{};
  const double dt = scenario.dt;
  const long steps = static_cast<long>(std::ceil(scenario.t_max / dt - 1e-9));

  auto control = [&](const Eigen::VectorXd& q, bool track) {
    arm::ArmModel m = model;
    m.q = q;
    arm::JointControl jc = arm::joint_control(m, scenario.obstacles, ds, mod, scenario.weights);
    if (track) {
      res.min_gamma = std::min(res.min_gamma, jc.min_gamma);
      res.max_budget = std::max(res.max_budget, jc.weight_budget);
    }
    return jc.qdot;
  };
  auto ee_error = [&]() {
    return (arm::forward_kinematics(model).joints.back() - scenario.goal).norm();
  };

  double t = 0.0;
  try {
    for (long step = 0; step <= steps; ++step) {
      if (record_stride > 0 && step % record_stride == 0) res.joint_trajectory.push_back(model.q);
      Eigen::VectorXd k1 = control(model.q, true);
      if (ee_error() < scenario.converge_tol) {
        res.converged = true;
        break;
      }
      if (step == steps) break;
      Eigen::VectorXd k2 = control(model.q + 0.5 * dt * k1, false);
      Eigen::VectorXd k3 = control(model.q + 0.5 * dt * k2, false);
      Eigen::VectorXd k4 = control(model.q + dt * k3, false);
      model.q += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      t = (step + 1) * dt;
    }
  } catch (const Error& e) {
    res.collided = true;
    res.diagnostic = std::string(to_string(e.code())) + ": " + e.what();
  }
  if (res.min_gamma <= 1.0) res.collided = true;
  res.final_error = ee_error();
  res.duration = t;
  return res;
}

ArmScenario arm_scenario_two_link() {
  ArmScenario s;
  s.model.base = vec2(0.0, 0.0);
  s.model.lengths = {1.0, 1.0};
  s.model.q = Eigen::Vector2d(0.2, 0.6);
  s.goal = vec2(-1.2, 1.0);
  s.obstacles.push_back(geometry::make_obstacle(geometry::make_circle(vec2(0.0, 1.3), 0.25)));
  return s;
}

ArmScenario arm_scenario_three_link() {
  ArmScenario s;
  s.model.base = vec2(0.0, 0.0);
  s.model.lengths = {1.0, 0.8, 0.6};
  s.model.q = Eigen::Vector3d(0.1, 0.4, 0.4);
  s.goal = vec2(-1.0, 1.4);
  Obstacle obs = geometry::make_obstacle(geometry::make_ellipse(vec2(0.6, 1.6), vec2(0.4, 0.15), 0.6));
  s.obstacles.push_back(std::move(obs));
  return s;
}

}  // namespace dsavoid::sim
