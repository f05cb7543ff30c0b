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
namespace {

struct Disc {
  Vec center;
  double radius;
};

bool free_of(const Vec& c, double r, const std::vector<Disc>& taken, double gap) {
  for (const auto& d : taken) {
    if ((c - d.center).norm() < r + d.radius + gap) return false;
  }
  return true;
}

Vec free_point(std::mt19937_64& rng, const std::vector<Obstacle>& env, double box,
               double min_gamma_value) {
  std::uniform_real_distribution<double> u(-box, box);
  for (;;) {
    Vec p = vec2(u(rng), u(rng));
    if (min_gamma(p, env) > min_gamma_value) return p;
  }
}

Obstacle random_inner_obstacle(std::mt19937_64& rng, const Vec& c, double& bound) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double angle = 2.0 * M_PI * unit(rng);
  if (unit(rng) < 0.5) {
    Vec axes = vec2(0.4 + 0.6 * unit(rng), 0.2 + 0.4 * unit(rng));
    bound = axes.maxCoeff();
    return geometry::make_obstacle(geometry::make_ellipse(c, axes, angle));
  }
  const double h = 0.5 * (0.8 + 0.6 * unit(rng));
  bound = h * std::sqrt(2.0);
  std::vector<Vec> square = {vec2(-h, -h), vec2(h, -h), vec2(h, h), vec2(-h, h)};
  return geometry::make_obstacle(geometry::make_polygon(c, square, angle));
}

}  // namespace

StaticScene random_static_scene(std::mt19937_64& rng, int index) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  StaticScene scene;
  const Vec origin = vec2(0.0, 0.0);
  if (index % 2 == 0) {
    const int petals = 3 + static_cast<int>(unit(rng) * 4.0);
    scene.obstacles.push_back(geometry::make_obstacle(
        geometry::make_star(origin, 6.0, 0.8, petals, 2.0 * M_PI * unit(rng)), true));
  } else {
    const int sides = 6 + static_cast<int>(unit(rng) * 3.0);
    std::vector<Vec> verts;
    const double phase = 2.0 * M_PI * unit(rng);
    for (int k = 0; k < sides; ++k) {
      double a = phase + 2.0 * M_PI * k / sides;
      verts.push_back(vec2(6.0 * std::cos(a), 6.0 * std::sin(a)));
    }
    scene.obstacles.push_back(geometry::make_obstacle(geometry::make_polygon(origin, verts), true));
  }
  const int count = 2 + static_cast<int>(unit(rng) * 3.0);
  std::vector<Disc> taken;
  std::uniform_real_distribution<double> pos(-3.2, 3.2);
  int placed = 0;
  while (placed < count) {
    Vec c = vec2(pos(rng), pos(rng));
    if (c.norm() > 3.2) continue;
    double bound = 0.0;
    Obstacle obs = random_inner_obstacle(rng, c, bound);
    if (!free_of(c, bound, taken, 0.3)) continue;
    taken.push_back({c, bound});
    scene.obstacles.push_back(std::move(obs));
    ++placed;
  }
  scene.start = free_point(rng, scene.obstacles, 4.2, 1.1);
  do {
    scene.attractor = free_point(rng, scene.obstacles, 4.2, 1.1);
  } while ((scene.attractor - scene.start).norm() < 3.0);
  return scene;
}

StaticScene random_star_world(std::mt19937_64& rng, int index) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  StaticScene scene;
  const int petals = 3 + static_cast<int>(unit(rng) * 4.0);
  const double phase = 2.0 * M_PI * unit(rng);
  if (index % 2 == 0) {
    scene.obstacles.push_back(geometry::make_obstacle(
        geometry::make_star(vec2(0.0, 0.0), 1.2, 0.35, petals, phase)));
    scene.attractor = free_point(rng, scene.obstacles, 3.0, 1.2);
    scene.start = free_point(rng, scene.obstacles, 5.0, 1.05);
  } else {
    scene.obstacles.push_back(geometry::make_obstacle(
        geometry::make_star(vec2(0.0, 0.0), 5.0, 1.0, petals, phase), true));
    scene.attractor = free_point(rng, scene.obstacles, 3.0, 1.2);
    scene.start = free_point(rng, scene.obstacles, 5.5, 1.05);
  }
  return scene;
}

DynamicScene random_dynamic_scene(std::mt19937_64& rng, double v_max, double fraction) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  DynamicScene scene;
  scene.v_max = v_max;
  const double budget = fraction * v_max;
  const Vec c = vec2(-1.0 + 2.0 * unit(rng), -1.0 + 2.0 * unit(rng));
  // Random split of the surface-speed budget.
  double s_lin = unit(rng), s_rot = 0.5 * unit(rng), s_def = 0.5 * unit(rng);
  const double total = s_lin + s_rot + s_def;
  s_lin *= budget / total;
  s_rot *= budget / total;
  s_def *= budget / total;
  const double heading = 2.0 * M_PI * unit(rng);

  Obstacle obs;
  double size = 0.0;
  if (unit(rng) < 0.5) {
    const double r = 0.5 + 0.7 * unit(rng);
    obs = geometry::make_obstacle(geometry::make_circle(c, r));
    obs.deformation.radial_rate = s_def + s_rot;
    size = r;
  } else {
    Vec axes = vec2(0.6 + 0.8 * unit(rng), 0.3 + 0.4 * unit(rng));
    obs = geometry::make_obstacle(geometry::make_ellipse(c, axes, 2.0 * M_PI * unit(rng)));
    size = axes.maxCoeff();
    obs.deformation.axes_rate = vec2(s_def * unit(rng), s_def * unit(rng));
    // The rotational share bounds the rim speed of the shape grown over the
    // scene horizon.
    Vec w(1);
    w[0] = (unit(rng) < 0.5 ? -1.0 : 1.0) * s_rot / (size + kDynamicHorizon * s_def);
    obs.motion.angular = w;
  }
  obs.motion.linear = s_lin * vec2(std::cos(heading), std::sin(heading));
  scene.obstacles.push_back(std::move(obs));

  std::uniform_real_distribution<double> lateral(-2.0, 2.0);
  do {
    scene.start = vec2(-4.0, lateral(rng));
  } while (min_gamma(scene.start, scene.obstacles) < 1.2);
  do {
    scene.attractor = vec2(4.0, lateral(rng));
  } while (min_gamma(scene.attractor, scene.obstacles) < 1.2);
  return scene;
}

StaticScene head_on_scene() {
  StaticScene scene;
  scene.obstacles.push_back(geometry::make_obstacle(geometry::make_circle(vec2(0.0, 0.0), 1.0)));
  scene.start = vec2(-4.0, 0.3);
  scene.attractor = vec2(4.0, 0.0);
  return scene;
}

void validate(const Scenario& s) {
  if (s.dimension < 2 || s.dimension > kMaxDim) {
    throw Error(ErrorCode::kUnsupportedDimension, "dimension must lie in [2, 8]");
  }
  if (s.ds.attractor.size() != s.dimension) {
    throw Error(ErrorCode::kInvalidArgument, "attractor dimension mismatch");
  }
  if (!(s.ds.gain > 0.0)) throw Error(ErrorCode::kInvalidArgument, "gain must be > 0");
  if (!(s.limits.v_max > 0.0)) throw Error(ErrorCode::kInvalidArgument, "v_max must be > 0");
  if (!(s.agent_radius >= 0.0)) throw Error(ErrorCode::kInvalidArgument, "agent radius must be >= 0");
  if (s.trials < 1) throw Error(ErrorCode::kInvalidArgument, "trials must be >= 1");
  modulation::validate(s.modulation);
  validate(s.integration);
  for (const auto& obs : s.obstacles) {
    if (obs.dim() != s.dimension) throw Error(ErrorCode::kInvalidArgument, "obstacle dimension mismatch");
    geometry::validate(obs);
  }
  if (min_gamma(s.ds.attractor, s.obstacles) <= 1.0) {
    throw Error(ErrorCode::kInsideObstacle, "attractor is not in free space");
  }
  for (size_t i = 0; i < s.starts.size(); ++i) {
    if (s.starts[i].size() != s.dimension) {
      throw Error(ErrorCode::kInvalidArgument, "start " + std::to_string(i) + " dimension mismatch");
    }
    if (min_gamma(s.starts[i], s.obstacles) <= 1.0) {
      throw Error(ErrorCode::kInsideObstacle, "start " + std::to_string(i) + " is not in free space");
    }
  }
  if (s.crowd) validate(*s.crowd);
  if (s.arm) {
    arm::validate(s.arm->model);
    arm::validate(s.arm->weights);
  }
}

}  // namespace dsavoid::sim
