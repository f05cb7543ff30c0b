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
#include <Eigen/Geometry>

#include "dsavoid/sim.hpp"

namespace dsavoid::sim {

std::string_view to_string(Outcome outcome) {
  switch (outcome) {
    case Outcome::kConverged: return "converged";
    case Outcome::kCollided: return "collided";
    case Outcome::kLocalMinimum: return "local-minimum";
  }
  return "unknown";
}

void validate(const IntegrationConfig& config) {
  if (!(config.dt > 0.0)) throw Error(ErrorCode::kInvalidArgument, "dt must be > 0");
  if (!(config.t_max > 0.0)) throw Error(ErrorCode::kInvalidArgument, "t_max must be > 0");
  if (!(config.converge_tol > 0.0)) throw Error(ErrorCode::kInvalidArgument, "converge_tol must be > 0");
  if (!(config.collision_tol >= 0.0)) throw Error(ErrorCode::kInvalidArgument, "collision_tol must be >= 0");
  if (config.record_stride < 0) throw Error(ErrorCode::kInvalidArgument, "record_stride must be >= 0");
}

namespace {

Mat rotation_by(const Vec& omega, double tau) {
  const int d = static_cast<int>(omega.size());
  if (d == 1) return geometry::rotation2(omega[0] * tau);
  if (d == 3) {
    double w = omega.norm();
    if (w == 0.0) return Mat::Identity(3, 3);
    Eigen::Matrix3d r = Eigen::AngleAxisd(w * tau, Eigen::Vector3d(omega / w)).toRotationMatrix();
    return Mat(r);
  }
  throw Error(ErrorCode::kUnsupportedDimension, "angular velocity needs size 1 or 3");
}

}  // namespace

namespace {

constexpr int kMaxRefinement = 8;

// One RK4 step of size h. A stage that penetrates an obstacle beyond the
// contact tolerance triggers two half steps instead, down to h / 2^8.
Vec rk4_step(const Vec& x, const std::vector<Obstacle>& env, double t, double h,
             Controller& controller, std::vector<Obstacle>& env_end, int depth) {
  std::vector<Obstacle> mid = env;
  advance_obstacles(mid, 0.5 * h);
  std::vector<Obstacle> end = mid;
  advance_obstacles(end, 0.5 * h);
  try {
    Vec k1 = controller.velocity(x, env, t);
    Vec k2 = controller.velocity(x + 0.5 * h * k1, mid, t + 0.5 * h);
    Vec k3 = controller.velocity(x + 0.5 * h * k2, mid, t + 0.5 * h);
    Vec k4 = controller.velocity(x + h * k3, end, t + h);
    env_end = std::move(end);
    return x + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kInsideObstacle || depth >= kMaxRefinement) throw;
  }
  std::vector<Obstacle> half;
  Vec xm = rk4_step(x, env, t, 0.5 * h, controller, half, depth + 1);
  return rk4_step(xm, half, t + 0.5 * h, 0.5 * h, controller, env_end, depth + 1);
}

}  // namespace

void advance_obstacle(Obstacle& obs, double tau) {
  const Vec c0 = obs.shape.center;
  const auto& m = obs.motion;
  auto move = [&](Vec& p, const Mat* rot) {
    if (rot) p = c0 + *rot * (p - c0);
    if (m.linear.size() > 0) p += tau * m.linear;
  };
  std::optional<Mat> rot;
  if (m.angular.size() > 0 && !m.angular.isZero(0.0)) rot = rotation_by(m.angular, tau);
  const Mat* r = rot ? &*rot : nullptr;
  if (rot) obs.shape.orientation = *rot * obs.shape.orientation;
  move(obs.reference_point, r);
  if (obs.shape.hull_triangle) {
    for (Vec& p : *obs.shape.hull_triangle) move(p, r);
  }
  if (obs.gap) {
    for (Vec& p : obs.gap->edge_points) move(p, r);
    move(obs.gap->center, r);
  }
  move(obs.shape.center, nullptr);

  const auto& def = obs.deformation;
  if (def.radial_rate != 0.0) {
    if (auto* c = std::get_if<geometry::Circle>(&obs.shape.kind)) {
      c->radius += tau * def.radial_rate;
    } else {
      obs.shape.margin += tau * def.radial_rate;
    }
  }
  if (def.axes_rate.size() > 0) {
    if (auto* e = std::get_if<geometry::Ellipse>(&obs.shape.kind)) e->semi_axes += tau * def.axes_rate;
  }
}

void advance_obstacles(std::vector<Obstacle>& env, double tau) {
  for (auto& obs : env) advance_obstacle(obs, tau);
}

double min_gamma(const Vec& x, const std::vector<Obstacle>& env) {
  double g = geometry::kInfinity;
  for (const auto& obs : env) g = std::min(g, geometry::gamma(x, obs));
  return g;
}

TrialResult integrate(const Vec& start, const Vec& attractor, std::vector<Obstacle> env,
                      Controller& controller, const IntegrationConfig& config,
                      EnvironmentDriver* driver) {
  validate(config);
  TrialResult res;
  Vec x = start;
  double t = 0.0;
  const double dt = config.dt;
  const long steps = static_cast<long>(std::ceil(config.t_max / dt - 1e-9));
  const long tail_steps = std::max<long>(1, steps / 20);
  std::vector<double> tail(tail_steps, 0.0);
  long tail_count = 0;
  double speed_sum = 0.0, speed_sq = 0.0;
  long n_speed = 0;

  auto done = [&](const Vec& p) {
    if (config.finish_axis >= 0) return p[config.finish_axis] >= config.finish_value;
    return (p - attractor).norm() < config.converge_tol;
  };
  auto record = [&](long step, double g, double speed) {
    if (config.record_stride > 0 && step % config.record_stride == 0) {
      res.trajectory.push_back({t, x, g, speed});
    }
  };
  auto finish = [&](Outcome outcome) {
    res.outcome = outcome;
    res.final_state = x;
    res.metrics.duration = t;
    if (n_speed > 0) {
      double mean = speed_sum / n_speed;
      res.metrics.mean_speed = mean;
      res.metrics.speed_std = std::sqrt(std::max(0.0, speed_sq / n_speed - mean * mean));
    }
    long k = std::min(tail_count, tail_steps);
    double s = 0.0;
    for (long i = 0; i < k; ++i) s += tail[i];
    res.tail_speed = k > 0 ? s / k : 0.0;
    return res;
  };

  if (driver) driver->update(env, x, t, dt);
  double g0 = min_gamma(x, env);
  res.min_gamma = g0;
  record(0, g0, 0.0);
  if (g0 < 1.0) {
    res.diagnostic = "start inside an obstacle";
    return finish(Outcome::kCollided);
  }
  for (long step = 1; step <= steps; ++step) {
    if (done(x)) return finish(Outcome::kConverged);
    if (step > 1 && driver) driver->update(env, x, t, dt);
    Vec x_new;
    std::vector<Obstacle> end;
    try {
      controller.prepare(env, x, t);
      x_new = rk4_step(x, env, t, dt, controller, end, 0);
    } catch (const Error& e) {
      res.diagnostic = std::string(to_string(e.code())) + ": " + e.what();
      return finish(Outcome::kCollided);
    }
    const double ds = (x_new - x).norm();
    const double speed = ds / dt;
    res.metrics.distance += ds;
    speed_sum += speed;
    speed_sq += speed * speed;
    ++n_speed;
    tail[tail_count % tail_steps] = speed;
    ++tail_count;
    x = x_new;
    env = std::move(end);
    t = step * dt;
    double g = min_gamma(x, env);
    res.min_gamma = std::min(res.min_gamma, g);
    record(step, g, speed);
    if (g < 1.0 - config.collision_tol) {
      res.diagnostic = "gamma below collision tolerance";
      return finish(Outcome::kCollided);
    }
  }
  if (done(x)) return finish(Outcome::kConverged);
  finish(Outcome::kLocalMinimum);
  double vref = std::isfinite(controller.speed_limit()) ? controller.speed_limit() : 1.0;
  res.diagnostic = res.tail_speed < 1e-3 * vref ? "stalled" : "timeout";
  return res;
}

std::mt19937_64 trial_rng(std::uint64_t seed, std::uint64_t trial) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(trial), static_cast<std::uint32_t>(trial >> 32)};
  return std::mt19937_64(seq);
}

}  // namespace dsavoid::sim
