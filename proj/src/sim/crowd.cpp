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
#include <numeric>

#include "dsavoid/sim.hpp"

namespace dsavoid::sim {

void validate(const CrowdConfig& config) {
  if (!(config.width > 0.0) || !(config.length > 0.0) || !(config.window > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "corridor dimensions must be > 0");
  }
  if (!(config.pedestrian_radius > 0.0) || !(config.robot_radius > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "radii must be > 0");
  }
  if (config.perceived < 1) throw Error(ErrorCode::kInvalidArgument, "perceived count must be >= 1");
  if (!(config.v_max > 0.0)) throw Error(ErrorCode::kInvalidArgument, "v_max must be > 0");
  if (!(config.crowd_speed >= 0.0) || config.crowd_speed >= config.v_max) {
    throw Error(ErrorCode::kInvalidArgument, "crowd speed must lie in [0, v_max)");
  }
  if (config.lanes.empty()) throw Error(ErrorCode::kInvalidArgument, "at least one lane required");
  if (!(config.dt > 0.0) || !(config.t_max > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "dt and t_max must be > 0");
  }
}

std::optional<Obstacle> virtual_wall(const Vec& robot, const std::vector<Vec>& pedestrians,
                                     const CrowdConfig& config) {
  const size_t nc = static_cast<size_t>(config.perceived);
  if (pedestrians.size() <= nc) return std::nullopt;
  const double rp = config.pedestrian_radius;
  const double rq = config.robot_radius;
  Vec shift = Vec::Zero(robot.size());
  for (size_t i = nc; i < pedestrians.size(); ++i) {
    Vec d = pedestrians[i] - robot;
    double dist = d.norm();
    if (dist == 0.0) continue;
    shift += (d / dist) * std::exp(-(dist - rp - rq));
  }
  const double next = (pedestrians[nc] - robot).norm();
  const double limit = 0.5 * next;
  if (shift.norm() > limit) shift *= limit / shift.norm();
  Vec center = robot + shift;
  double radius = (pedestrians[nc] - center).norm() + rp + rq;
  Obstacle wall = geometry::make_obstacle(geometry::make_circle(center, radius), true);
  wall.deformation.repulsive = true;
  return wall;
}

CrowdDriver::CrowdDriver(const CrowdConfig& config, int pedestrians, std::uint64_t seed)
    : config_(config), direction_(config.flow == Flow::kParallel ? 1.0 : -1.0) {
  validate(config_);
  if (pedestrians < 0) throw Error(ErrorCode::kInvalidArgument, "pedestrian count must be >= 0");
  std::mt19937_64 rng(seed);
  const int lanes = static_cast<int>(config_.lanes.size());
  std::vector<int> per_lane(lanes, 0);
  for (int i = 0; i < pedestrians; ++i) ++per_lane[i % lanes];
  const double w = config_.window;
  const double clearance = config_.pedestrian_radius + config_.robot_radius + 0.3;
  std::uniform_real_distribution<double> jitter(-config_.jitter, config_.jitter);
  for (int l = 0; l < lanes; ++l) {
    const int n = per_lane[l];
    if (n == 0) continue;
    const double free = w - n * config_.min_gap;
    if (free < 0.0) throw Error(ErrorCode::kInvalidArgument, "crowd too dense for the lane gap");
    std::uniform_real_distribution<double> u(0.0, free);
    for (int attempt = 0;; ++attempt) {
      std::vector<double> xs(n);
      for (double& x : xs) x = u(rng);
      std::sort(xs.begin(), xs.end());
      std::vector<Vec> lane;
      bool clear = true;
      for (int k = 0; k < n; ++k) {
        Vec p = vec2(xs[k] + k * config_.min_gap - 0.5 * w, config_.lanes[l] + jitter(rng));
        if (p.norm() < clearance) clear = false;
        lane.push_back(p);
      }
      if (clear || attempt > 1000) {
        initial_.insert(initial_.end(), lane.begin(), lane.end());
        break;
      }
    }
  }
}

std::vector<Vec> CrowdDriver::positions(double t, const Vec& agent) const {
  const double w = config_.window;
  std::vector<Vec> out;
  out.reserve(initial_.size());
  for (const Vec& p0 : initial_) {
    double x = p0[0] + direction_ * config_.crowd_speed * t;
    double rel = x - agent[0] + 0.5 * w;
    rel -= w * std::floor(rel / w);
    out.push_back(vec2(agent[0] - 0.5 * w + rel, p0[1]));
  }
  return out;
}

void CrowdDriver::update(std::vector<Obstacle>& env, const Vec& agent, double t, double dt) {
  std::vector<Vec> pos = positions(t, agent);
  std::vector<double> dist(pos.size());
  for (size_t i = 0; i < pos.size(); ++i) dist[i] = (pos[i] - agent).norm();
  std::vector<size_t> order(pos.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) { return dist[a] < dist[b]; });
  std::vector<Vec> sorted;
  sorted.reserve(pos.size());
  for (size_t i : order) sorted.push_back(pos[i]);

  env.clear();
  const size_t nc = std::min(sorted.size(), static_cast<size_t>(config_.perceived));
  const Vec vel = vec2(direction_ * config_.crowd_speed, 0.0);
  for (size_t i = 0; i < nc; ++i) {
    Obstacle ped = geometry::make_obstacle(
        geometry::make_circle(sorted[i], config_.pedestrian_radius, config_.robot_radius));
    ped.motion.linear = vel;
    env.push_back(std::move(ped));
  }
  std::optional<Obstacle> wall = virtual_wall(agent, sorted, config_);
  if (wall) {
    const auto& c = std::get<geometry::Circle>(wall->shape.kind);
    if (last_wall_) {
      const auto& c0 = std::get<geometry::Circle>(last_wall_->shape.kind);
      wall->motion.linear = (wall->center() - last_wall_->center()) / dt;
      wall->deformation.radial_rate = (c.radius - c0.radius) / dt;
    } else {
      wall->motion.linear = Vec::Zero(2);
    }
    last_wall_ = *wall;
    env.push_back(std::move(*wall));
  } else {
    last_wall_.reset();
  }
}

std::vector<CorridorPoint> corridor_experiment(const std::vector<double>& densities, Flow flow,
                                               int trials, std::uint64_t seed,
                                               const CrowdConfig& base) {
  if (trials < 1) throw Error(ErrorCode::kInvalidArgument, "trials must be >= 1");
  CrowdConfig config = base;
  config.flow = flow;
  validate(config);
  const Vec start = vec2(0.0, 0.0);
  const Vec goal = vec2(config.length + 10.0, 0.0);
  NominalDS ds{goal, 1.0, config.v_max};
  IntegrationConfig ic;
  ic.dt = config.dt;
  ic.t_max = config.t_max;
  ic.finish_axis = 0;
  ic.finish_value = config.length;

  std::vector<CorridorPoint> out;
  for (size_t k = 0; k < densities.size(); ++k) {
    const double density = densities[k];
    if (!(density >= 0.0)) throw Error(ErrorCode::kInvalidArgument, "density must be >= 0");
    // Density is given per 1000 m^2 of corridor.
    const int count = static_cast<int>(std::lround(density * config.window * config.width / 1000.0));
    std::function<TrialResult(int)> run = [&](int i) {
      std::mt19937_64 rng = trial_rng(seed + 7919 * k + (flow == Flow::kParallel ? 104729 : 0),
                                      static_cast<std::uint64_t>(i));
      CrowdDriver driver(config, count, rng());
      DynamicController ctrl(ds, ModulationParams{}, AgentLimits{config.v_max});
      return integrate(start, goal, {}, ctrl, ic, &driver);
    };
    std::vector<TrialResult> results = run_trials<TrialResult>(trials, run);
    CorridorPoint p;
    p.density = density;
    p.flow = flow;
    p.trials = trials;
    for (const auto& r : results) {
      if (r.outcome == Outcome::kCollided) ++p.collided;
      if (r.outcome != Outcome::kConverged) continue;
      ++p.completed;
      p.mean.distance += r.metrics.distance;
      p.mean.duration += r.metrics.duration;
      p.mean.mean_speed += r.metrics.mean_speed;
      p.mean.speed_std += r.metrics.speed_std;
    }
    if (p.completed > 0) {
      p.mean.distance /= p.completed;
      p.mean.duration /= p.completed;
      p.mean.mean_speed /= p.completed;
      p.mean.speed_std /= p.completed;
    }
    out.push_back(p);
  }
  return out;
}

}  // namespace dsavoid::sim
