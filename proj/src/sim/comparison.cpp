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
#include <array>
#include <cmath>

#include "dsavoid/sim.hpp"

namespace dsavoid::sim {
namespace {

// Split of the surface-speed budget between translation and axis rates.
constexpr double kLinearShare = 0.6;
constexpr double kAxesShare = 0.4;

struct TrialSummary {
  std::array<Outcome, 3> outcome{};
  std::array<Metrics, 3> metrics{};
};

}  // namespace

std::vector<Obstacle> comparison_scene(const ComparisonConfig& config, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> ux(config.region_x_min + 0.5, config.region_x_max - 0.5),
      uy(-config.spawn_y, config.spawn_y), ua(config.major_min, config.major_max),
      ub(config.minor_min, config.minor_max), uang(0.0, M_PI);
  std::vector<Obstacle> env;
  while (env.size() < 2) {
    Vec c = vec2(ux(rng), uy(rng));
    Vec axes = vec2(ua(rng), ub(rng));
    double angle = uang(rng);
    Obstacle obs = geometry::make_obstacle(geometry::make_ellipse(c, axes, angle));
    obs.motion.linear = Vec::Zero(2);
    obs.deformation.axes_rate = Vec::Zero(2);
    if (geometry::gamma(config.start, obs) < 1.5 || geometry::gamma(config.goal, obs) < 1.5) continue;
    env.push_back(std::move(obs));
  }
  return env;
}

RandomWalkDriver::RandomWalkDriver(const ComparisonConfig& config, std::uint64_t seed)
    : config_(config), rng_(seed) {}

void RandomWalkDriver::update(std::vector<Obstacle>& env, const Vec& /*agent*/, double /*t*/,
                              double dt) {
  std::normal_distribution<double> noise(0.0, 1.0);
  const double budget = config_.surface_speed_fraction * config_.v_max;
  const double v_lim = kLinearShare * budget;
  const double a_lim = kAxesShare * budget;
  const double sv = config_.sigma_velocity * std::sqrt(dt);
  const double sa = config_.sigma_axes * std::sqrt(dt);
  for (auto& obs : env) {
    Vec& v = obs.motion.linear;
    for (int i = 0; i < 2; ++i) v[i] += sv * noise(rng_);
    double s = v.norm();
    if (s > v_lim) v *= v_lim / s;
    const Vec& c = obs.center();
    if ((c[0] + dt * v[0] < config_.region_x_min && v[0] < 0.0) ||
        (c[0] + dt * v[0] > config_.region_x_max && v[0] > 0.0)) {
      v[0] = -v[0];
    }
    if (std::abs(c[1] + dt * v[1]) > config_.region_y && c[1] * v[1] > 0.0) v[1] = -v[1];

    auto* e = std::get_if<geometry::Ellipse>(&obs.shape.kind);
    Vec& rate = obs.deformation.axes_rate;
    for (int i = 0; i < 2; ++i) {
      rate[i] = std::clamp(rate[i] + sa * noise(rng_), -a_lim, a_lim);
      double next = e->semi_axes[i] + dt * rate[i];
      if ((next < config_.axis_min && rate[i] < 0.0) || (next > config_.axis_max && rate[i] > 0.0)) {
        rate[i] = -rate[i];
      }
    }
  }
}

double surface_speed_bound(const Obstacle& obs) {
  double s = 0.0;
  if (obs.motion.linear.size() > 0) s += obs.motion.linear.norm();
  if (obs.motion.angular.size() > 0) {
    s += obs.motion.angular.norm() *
         (geometry::characteristic_size(obs.shape) + (obs.reference_point - obs.center()).norm());
  }
  const auto& d = obs.deformation;
  if (d.linear.size() > 0) s += d.linear.norm();
  s += std::abs(d.radial_rate);
  if (d.axes_rate.size() > 0) s += d.axes_rate.cwiseAbs().maxCoeff();
  return s;
}

ComparisonResult comparison_experiment(const ComparisonConfig& config) {
  if (config.trials < 1) throw Error(ErrorCode::kInvalidArgument, "trials must be >= 1");
  if (!(config.v_max > 0.0)) throw Error(ErrorCode::kInvalidArgument, "v_max must be > 0");
  IntegrationConfig ic;
  ic.dt = config.dt;
  ic.t_max = config.t_max;
  NominalDS ds{config.goal, 1.0, config.v_max};
  AgentLimits limits{config.v_max};

  std::function<TrialSummary(int)> trial = [&](int i) {
    std::mt19937_64 rng = trial_rng(config.seed, static_cast<std::uint64_t>(i));
    std::vector<Obstacle> env = comparison_scene(config, rng);
    const std::uint64_t walk_seed = rng();
    TrialSummary out;
    for (int c = 0; c < 3; ++c) {
      std::unique_ptr<Controller> ctrl;
      if (c == 0) {
        ctrl = std::make_unique<DynamicController>(ds, ModulationParams{}, limits, true);
      } else if (c == 1) {
        ModulationParams p;
        p.basis = modulation::BasisKind::kOrthogonal;
        ctrl = std::make_unique<DynamicController>(ds, p, limits, false);
      } else {
        ctrl = std::make_unique<PotentialFieldController>(ds, config.potential, config.v_max);
      }
      RandomWalkDriver driver(config, walk_seed);
      TrialResult r = integrate(config.start, config.goal, env, *ctrl, ic, &driver);
      out.outcome[c] = r.outcome;
      out.metrics[c] = r.metrics;
    }
    return out;
  };
  std::vector<TrialSummary> trials = run_trials<TrialSummary>(config.trials, trial);

  ComparisonResult res;
  res.trials = config.trials;
  const char* names[3] = {"Dynamic", "Orthogonal", "Repulsion"};
  res.controllers.resize(3);
  for (int c = 0; c < 3; ++c) res.controllers[c].name = names[c];
  for (const auto& t : trials) {
    res.outcomes.push_back({t.outcome.begin(), t.outcome.end()});
    bool joint = true;
    for (int c = 0; c < 3; ++c) {
      auto& s = res.controllers[c];
      switch (t.outcome[c]) {
        case Outcome::kConverged: ++s.converged; break;
        case Outcome::kCollided: ++s.collided; joint = false; break;
        case Outcome::kLocalMinimum: ++s.local_minimum; joint = false; break;
      }
      if (t.outcome[c] != Outcome::kConverged) joint = false;
    }
    if (!joint) continue;
    ++res.joint_converged;
    for (int c = 0; c < 3; ++c) {
      Metrics& m = res.controllers[c].mean;
      m.distance += t.metrics[c].distance;
      m.duration += t.metrics[c].duration;
      m.mean_speed += t.metrics[c].mean_speed;
      m.speed_std += t.metrics[c].speed_std;
    }
  }
  if (res.joint_converged > 0) {
    for (auto& s : res.controllers) {
      s.mean.distance /= res.joint_converged;
      s.mean.duration /= res.joint_converged;
      s.mean.mean_speed /= res.joint_converged;
      s.mean.speed_std /= res.joint_converged;
    }
  }
  return res;
}

}  // namespace dsavoid::sim
