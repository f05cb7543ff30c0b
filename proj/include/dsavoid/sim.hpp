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

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "dsavoid/arm.hpp"
#include "dsavoid/core.hpp"
#include "dsavoid/geometry.hpp"
#include "dsavoid/modulation.hpp"

namespace dsavoid::sim {

using geometry::Obstacle;
using modulation::AgentLimits;
using modulation::ModulationParams;
using modulation::NominalDS;

enum class Outcome { kConverged, kCollided, kLocalMinimum };

std::string_view to_string(Outcome outcome);

struct Metrics {
  double distance = 0.0;
  double duration = 0.0;
  double mean_speed = 0.0;
  double speed_std = 0.0;
};

struct Sample {
  double t = 0.0;
  Vec x;
  double gamma_min = 0.0;
  double speed = 0.0;
};

struct TrialResult {
  Outcome outcome = Outcome::kLocalMinimum;
  std::vector<Sample> trajectory;
  Metrics metrics;
  double min_gamma = geometry::kInfinity;
  // Mean speed over the final 5% of steps.
  double tail_speed = 0.0;
  Vec final_state;
  std::string diagnostic;
};

struct IntegrationConfig {
  double dt = 1e-3;
  double t_max = 50.0;
  double converge_tol = 1e-2;
  double collision_tol = 1e-3;
  // Record every n-th step; 0 disables recording.
  int record_stride = 0;
  // Optional finish line: converged once x[finish_axis] >= finish_value.
  int finish_axis = -1;
  double finish_value = 0.0;
};

void validate(const IntegrationConfig& config);

// Rigid motion and parametric deformation of an obstacle over tau.
void advance_obstacle(Obstacle& obs, double tau);

void advance_obstacles(std::vector<Obstacle>& env, double tau);

// Changes obstacle rates (or rebuilds the environment) at the start of a step.
class EnvironmentDriver {
 public:
  virtual ~EnvironmentDriver() = default;
  virtual void update(std::vector<Obstacle>& env, const Vec& agent, double t, double dt) = 0;
};

class Controller {
 public:
  virtual ~Controller() = default;
  // Called once per step with the environment at the step start. May adjust
  // reference points before the stage snapshots are taken.
  virtual void prepare(std::vector<Obstacle>& /*env*/, const Vec& /*x*/, double /*t*/) {}
  virtual Vec velocity(const Vec& x, const std::vector<Obstacle>& env, double t) = 0;
  virtual double speed_limit() const { return geometry::kInfinity; }
};

double min_gamma(const Vec& x, const std::vector<Obstacle>& env);

// Fixed-step RK4. The environment is advanced with the state so that every
// stage sees the obstacles at its own time. A step whose stages penetrate an
// obstacle beyond the contact tolerance is redone as two half steps.
TrialResult integrate(const Vec& start, const Vec& attractor, std::vector<Obstacle> env,
                      Controller& controller, const IntegrationConfig& config,
                      EnvironmentDriver* driver = nullptr);

// Penetration depth in Γ that still counts as contact, not collision.
inline constexpr double kContactTolerance = 1e-3;

// Moves x radially onto the surface of every obstacle it penetrates by at most
// `tol` in Γ. Deeper penetration signals inside_obstacle.
Vec project_to_free_space(const Vec& x, const std::vector<Obstacle>& env, double tol);

// Modulated field, optionally cropped with the safe velocity.
class DynamicController : public Controller {
 public:
  DynamicController(NominalDS ds, ModulationParams params, std::optional<AgentLimits> limits,
                    bool common_reference = false);
  void prepare(std::vector<Obstacle>& env, const Vec& x, double t) override;
  Vec velocity(const Vec& x, const std::vector<Obstacle>& env, double t) override;
  double speed_limit() const override;
  // Evaluations where the obstacle outran v_max and the command was clamped.
  long too_fast_count() const { return too_fast_; }

 private:
  NominalDS ds_;
  ModulationParams params_;
  std::optional<AgentLimits> limits_;
  long too_fast_ = 0;
  bool common_reference_;
  std::optional<Vec> common_ref_;
};

Vec baseline_orthogonal(const Vec& x, const Vec& f, const std::vector<Obstacle>& env,
                        const ModulationParams& params = {});

struct PotentialFieldParams {
  double gain = 1.0;
  double range = 1.5;
};

// Classical repulsive potential added to the nominal velocity. Distance is
// measured along the reference direction; the gradient is the surface normal.
Vec baseline_potential_field(const Vec& x, const Vec& f, const std::vector<Obstacle>& env,
                             const PotentialFieldParams& params);

class PotentialFieldController : public Controller {
 public:
  PotentialFieldController(NominalDS ds, PotentialFieldParams params, double v_max);
  Vec velocity(const Vec& x, const std::vector<Obstacle>& env, double t) override;
  double speed_limit() const override { return v_max_; }

 private:
  NominalDS ds_;
  PotentialFieldParams params_;
  double v_max_;
};

// Runs fn(i) for i in [0, n) on a worker pool and returns the results in
// index order.
template <typename T>
std::vector<T> run_trials(int n, const std::function<T(int)>& fn, int workers = 0);

// Per-trial random engine derived from a base seed.
std::mt19937_64 trial_rng(std::uint64_t seed, std::uint64_t trial);

// ---------------------------------------------------------------- comparison

struct ComparisonConfig {
  int trials = 300;
  std::uint64_t seed = 1;
  double v_max = 1.0;
  double dt = 1e-3;
  double t_max = 40.0;
  Vec start = vec2(0.0, 0.0);
  Vec goal = vec2(10.0, 0.0);
  // Random walk: Gaussian increments per second on velocity and axis rates.
  double sigma_velocity = 0.6;
  double sigma_axes = 0.3;
  // Normal surface speed bound as a fraction of v_max.
  double surface_speed_fraction = 0.8;
  // Initial semi-axes (major, minor) ranges and the bounds kept by the walk.
  double major_min = 0.6, major_max = 1.6;
  double minor_min = 0.3, minor_max = 0.9;
  double axis_min = 0.3, axis_max = 1.8;
  // Centers start in |y| <= spawn_y and stay in x in [region_x_min,
  // region_x_max], |y| <= region_y.
  double spawn_y = 1.5;
  double region_x_min = 2.5, region_x_max = 7.5, region_y = 2.5;
  PotentialFieldParams potential{0.6, 1.5};
};

struct ControllerStats {
  std::string name;
  int converged = 0;
  int collided = 0;
  int local_minimum = 0;
  // Averages over trials where all controllers converged.
  Metrics mean;
};

struct ComparisonResult {
  std::vector<ControllerStats> controllers;
  int trials = 0;
  int joint_converged = 0;
  // outcomes[trial][controller]
  std::vector<std::vector<Outcome>> outcomes;
};

ComparisonResult comparison_experiment(const ComparisonConfig& config);

// Initial obstacles of one randomized comparison scene.
std::vector<Obstacle> comparison_scene(const ComparisonConfig& config, std::mt19937_64& rng);

// Random walk of the two ellipses with bounded surface speed.
class RandomWalkDriver : public EnvironmentDriver {
 public:
  RandomWalkDriver(const ComparisonConfig& config, std::uint64_t seed);
  void update(std::vector<Obstacle>& env, const Vec& agent, double t, double dt) override;

 private:
  ComparisonConfig config_;
  std::mt19937_64 rng_;
};

// ------------------------------------------------------------------ corridor

enum class Flow { kParallel, kCounter };

struct CrowdConfig {
  double width = 6.0;
  double length = 40.0;
  double window = 100.0;
  double pedestrian_radius = 0.6;
  double robot_radius = 0.5;
  int perceived = 10;
  double crowd_speed = 1.0;
  double v_max = 1.25;
  Flow flow = Flow::kCounter;
  // Lane centers and uniform lateral jitter.
  std::vector<double> lanes = {-1.5, 1.5};
  double jitter = 0.4;
  double min_gap = 2.5;
  double dt = 0.01;
  double t_max = 120.0;
};

void validate(const CrowdConfig& config);

// Circular boundary hiding pedestrians beyond the perceived set. Pedestrian
// centers must be sorted by distance to the robot. Returns nothing when there
// are at most `perceived` pedestrians.
std::optional<Obstacle> virtual_wall(const Vec& robot, const std::vector<Vec>& pedestrians,
                                     const CrowdConfig& config);

class CrowdDriver : public EnvironmentDriver {
 public:
  CrowdDriver(const CrowdConfig& config, int pedestrians, std::uint64_t seed);
  void update(std::vector<Obstacle>& env, const Vec& agent, double t, double dt) override;
  // Pedestrian centers at time t, wrapped into the window around x.
  std::vector<Vec> positions(double t, const Vec& agent) const;

 private:
  CrowdConfig config_;
  std::vector<Vec> initial_;
  double direction_;
  std::optional<Obstacle> last_wall_;
};

struct CorridorPoint {
  double density = 0.0;
  Flow flow = Flow::kCounter;
  int trials = 0;
  int completed = 0;
  int collided = 0;
  Metrics mean;
};

std::vector<CorridorPoint> corridor_experiment(const std::vector<double>& densities, Flow flow,
                                               int trials, std::uint64_t seed,
                                               const CrowdConfig& config = {});

struct DriveCommand {
  double linear = 0.0;
  double angular = 0.0;
};

// Unicycle command from a velocity evaluated at a point `offset` ahead.
DriveCommand nonholonomic_adapter(const Vec& velocity, double heading, double offset);

// ----------------------------------------------------------------------- arm

struct ArmScenario {
  arm::ArmModel model;
  std::vector<Obstacle> obstacles;
  Vec goal;
  double gain = 1.0;
  double max_speed = 0.5;
  double dt = 1e-3;
  double t_max = 30.0;
  double converge_tol = 1e-2;
  arm::ArmWeightParams weights;
};

struct ArmResult {
  bool converged = false;
  bool collided = false;
  double min_gamma = geometry::kInfinity;
  double max_budget = 0.0;
  double final_error = 0.0;
  double duration = 0.0;
  std::vector<Eigen::VectorXd> joint_trajectory;
  std::string diagnostic;
};

ArmResult simulate_arm(const ArmScenario& scenario, int record_stride = 0);

ArmScenario arm_scenario_two_link();
ArmScenario arm_scenario_three_link();

// -------------------------------------------------------------------- scenes

// Randomized static scene mixing ellipses, squares and a star-shaped or
// polygonal boundary, with a start and attractor in free space.
struct StaticScene {
  std::vector<Obstacle> obstacles;
  Vec start;
  Vec attractor;
};

StaticScene random_static_scene(std::mt19937_64& rng, int index);

// Single obstacle or boundary with the attractor in free space.
StaticScene random_star_world(std::mt19937_64& rng, int index);

struct DynamicScene {
  std::vector<Obstacle> obstacles;
  Vec start;
  Vec attractor;
  double v_max = 1.0;
};

// Time over which the surface-speed bound of a dynamic scene is guaranteed.
inline constexpr double kDynamicHorizon = 15.0;

DynamicScene random_dynamic_scene(std::mt19937_64& rng, double v_max, double fraction);

// Largest normal surface speed of the obstacle, bounded from its rates.
double surface_speed_bound(const Obstacle& obs);

// Head-on approach to a circle on the line to the attractor.
StaticScene head_on_scene();

// ----------------------------------------------------------------- scenario

struct PlotConfig {
  int resolution = 50;
  Vec lower;
  Vec upper;
  int streamlines = 0;
};

struct Scenario {
  int dimension = 2;
  NominalDS ds;
  std::vector<Vec> starts;
  AgentLimits limits;
  double agent_radius = 0.0;
  std::vector<Obstacle> obstacles;
  ModulationParams modulation;
  IntegrationConfig integration;
  std::string experiment = "trajectory";
  std::uint64_t seed = 1;
  int trials = 1;
  std::optional<CrowdConfig> crowd;
  std::vector<double> densities;
  std::vector<Flow> flows;
  std::optional<ArmScenario> arm;
  std::optional<ComparisonConfig> comparison;
  std::optional<PlotConfig> plot;
  bool safe_velocity = false;
};

// Static checks: dimensions, shapes, starts and attractor in free space.
void validate(const Scenario& scenario);

}  // namespace dsavoid::sim

#include "dsavoid/sim_pool.hpp"
