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
#include "dsavoid/io/runner.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>

#include "dsavoid/io/csv.hpp"
#include "dsavoid/io/svg.hpp"

namespace dsavoid::io {
namespace {

namespace fs = std::filesystem;
using sim::Scenario;

class Writer {
 public:
  Writer(const std::string& dir, RunReport& report) : dir_(dir), report_(report) {
    fs::create_directories(dir_);
  }

  template <typename Fn>
  void write(const std::string& name, Fn&& fn) {
    fs::path path = dir_ / name;
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    fn(out);
    if (!out) throw std::runtime_error("write failed for " + path.string());
    report_.files.push_back(path.string());
  }

 private:
  fs::path dir_;
  RunReport& report_;
};

std::unique_ptr<sim::DynamicController> make_controller(const Scenario& s) {
  std::optional<modulation::AgentLimits> limits;
  if (s.safe_velocity) limits = s.limits;
  return std::make_unique<sim::DynamicController>(s.ds, s.modulation, limits);
}

sim::IntegrationConfig recording_config(const Scenario& s, int max_points) {
  sim::IntegrationConfig cfg = s.integration;
  if (cfg.record_stride <= 0) {
    double steps = std::ceil(cfg.t_max / cfg.dt);
    cfg.record_stride = std::max(1, static_cast<int>(std::ceil(steps / max_points)));
  }
  return cfg;
}

std::vector<Vec> path_of(const sim::TrialResult& r) {
  std::vector<Vec> path;
  path.reserve(r.trajectory.size());
  for (const auto& sample : r.trajectory) path.push_back(sample.x);
  return path;
}

std::vector<sim::TrialResult> integrate_all(const Scenario& s, const std::vector<Vec>& starts,
                                            const sim::IntegrationConfig& cfg) {
  std::function<sim::TrialResult(int)> run = [&](int i) {
    auto controller = make_controller(s);
    return sim::integrate(starts[i], s.ds.attractor, s.obstacles, *controller, cfg);
  };
  return sim::run_trials<sim::TrialResult>(static_cast<int>(starts.size()), run);
}

// Streamline seeds at the centers of a k x k grid, keeping free points.
std::vector<Vec> streamline_seeds(const Scenario& s, const sim::PlotConfig& plot) {
  std::vector<Vec> seeds;
  if (plot.streamlines <= 0) return seeds;
  int k = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(plot.streamlines))));
  for (int j = 0; j < k && static_cast<int>(seeds.size()) < plot.streamlines; ++j) {
    for (int i = 0; i < k && static_cast<int>(seeds.size()) < plot.streamlines; ++i) {
      Vec x = vec2(plot.lower[0] + (plot.upper[0] - plot.lower[0]) * (i + 0.5) / k,
                   plot.lower[1] + (plot.upper[1] - plot.lower[1]) * (j + 0.5) / k);
      if (sim::min_gamma(x, s.obstacles) > 1.05) seeds.push_back(x);
    }
  }
  return seeds;
}

void run_field(const Scenario& s, Writer& w, std::ostream& log) {
  sim::PlotConfig plot = s.plot ? *s.plot : default_plot_config(s);
  auto controller = make_controller(s);
  VelocityField field = [&](const Vec& x) { return controller->velocity(x, s.obstacles, 0.0); };
  auto samples = sample_field(s.obstacles, field, plot);

  std::vector<Vec> seeds = s.starts;
  for (auto& x : streamline_seeds(s, plot)) seeds.push_back(x);
  auto results = integrate_all(s, seeds, recording_config(s, 2000));
  std::vector<std::vector<Vec>> paths;
  for (const auto& r : results) paths.push_back(path_of(r));

  w.write("field.csv", [&](std::ostream& out) { write_field_csv(out, samples); });
  w.write("field.svg", [&](std::ostream& out) {
    out << plot_field(s.obstacles, s.ds.attractor, field, plot, paths);
  });
  w.write("summary.csv", [&](std::ostream& out) { write_trajectory_summary_csv(out, results); });
  int converged = static_cast<int>(std::count_if(results.begin(), results.end(), [](const auto& r) {
    return r.outcome == sim::Outcome::kConverged;
  }));
  log << "field: " << samples.size() << " grid points, " << results.size() << " streamlines, "
      << converged << " converged\n";
}

void run_trajectory(const Scenario& s, Writer& w, std::ostream& log) {
  auto cfg = recording_config(s, 5000);
  auto results = integrate_all(s, s.starts, cfg);
  for (size_t i = 0; i < results.size(); ++i) {
    w.write("trajectory_" + std::to_string(i) + ".csv", [&](std::ostream& out) {
      write_trajectory_csv(out, results[i].trajectory, s.dimension);
    });
  }
  w.write("summary.csv", [&](std::ostream& out) { write_trajectory_summary_csv(out, results); });
  if (s.dimension == 2) {
    sim::PlotConfig plot = s.plot ? *s.plot : default_plot_config(s);
    auto controller = make_controller(s);
    VelocityField field = [&](const Vec& x) { return controller->velocity(x, s.obstacles, 0.0); };
    std::vector<std::vector<Vec>> paths;
    for (const auto& r : results) paths.push_back(path_of(r));
    // Moving obstacles are drawn at their initial pose.
    w.write("trajectory.svg", [&](std::ostream& out) {
      out << plot_field(s.obstacles, s.ds.attractor, field, plot, paths);
    });
  }
  for (size_t i = 0; i < results.size(); ++i) {
    log << "start " << i << ": " << sim::to_string(results[i].outcome) << ", min gamma "
        << format_double(results[i].min_gamma) << "\n";
  }
}

void run_comparison(const Scenario& s, Writer& w, std::ostream& log) {
  sim::ComparisonConfig cfg = s.comparison ? *s.comparison : sim::ComparisonConfig{};
  cfg.trials = s.trials;
  cfg.seed = s.seed;
  auto result = sim::comparison_experiment(cfg);
  w.write("summary.csv", [&](std::ostream& out) { write_comparison_csv(out, result); });
  w.write("outcomes.csv", [&](std::ostream& out) { write_comparison_outcomes_csv(out, result); });
  for (const auto& c : result.controllers) {
    log << c.name << ": converged " << c.converged << ", collided " << c.collided
        << ", local minimum " << c.local_minimum << " of " << result.trials << "\n";
  }
}

void run_corridor(const Scenario& s, Writer& w, std::ostream& log) {
  sim::CrowdConfig cfg = s.crowd ? *s.crowd : sim::CrowdConfig{};
  std::vector<sim::Flow> flows = s.flows;
  if (flows.empty()) flows = {sim::Flow::kCounter, sim::Flow::kParallel};
  std::vector<sim::CorridorPoint> points;
  for (auto flow : flows) {
    sim::CrowdConfig c = cfg;
    c.flow = flow;
    auto curve = sim::corridor_experiment(s.densities, flow, s.trials, s.seed, c);
    points.insert(points.end(), curve.begin(), curve.end());
  }
  w.write("summary.csv", [&](std::ostream& out) { write_corridor_csv(out, points); });
  for (const auto& p : points) {
    log << to_string(p.flow) << " density " << format_double(p.density) << ": completed "
        << p.completed << "/" << p.trials << ", mean time " << format_double(p.mean.duration)
        << "\n";
  }
}

void run_arm(const Scenario& s, Writer& w, std::ostream& log) {
  const sim::ArmScenario& arm = *s.arm;
  int stride = std::max(1, static_cast<int>(std::round(0.01 / arm.dt)));
  auto result = sim::simulate_arm(arm, stride);
  w.write("summary.csv", [&](std::ostream& out) { write_arm_summary_csv(out, result); });
  w.write("joints.csv", [&](std::ostream& out) { write_arm_joints_csv(out, result, stride); });
  if (!result.joint_trajectory.empty()) {
    w.write("arm.svg", [&](std::ostream& out) { out << plot_arm(arm, result); });
  }
  log << "arm: " << (result.converged ? "converged" : "not converged")
      << (result.collided ? ", collided" : "") << ", min gamma " << format_double(result.min_gamma)
      << ", final error " << format_double(result.final_error) << "\n";
}

void check(const Scenario& s) {
  try {
    sim::validate(s);
  } catch (const Error& e) {
    throw ValidationError(e.what());
  }
  const std::string& type = s.experiment;
  if ((type == "trajectory") && s.starts.empty()) {
    throw ValidationError("trajectory experiment needs at least one start");
  }
  if (type == "field" && s.dimension != 2) {
    throw ValidationError(std::string(to_string(ErrorCode::kUnsupportedDimension)) +
                          ": field plots are planar");
  }
  if (type == "corridor" && s.densities.empty()) {
    throw ValidationError("corridor experiment needs experiment.densities");
  }
  if (type == "corridor" && std::any_of(s.densities.begin(), s.densities.end(),
                                        [](double d) { return !(d >= 0.0); })) {
    throw ValidationError("densities must be >= 0");
  }
  if (type == "arm" && !s.arm) throw ValidationError("arm experiment needs an 'arm' section");
  if (type == "comparison" && s.comparison && !(s.comparison->v_max > 0.0)) {
    throw ValidationError("comparison v_max must be > 0");
  }
}

}  // namespace

RunReport run_scenario(Scenario s, const RunOptions& options, std::ostream& log) {
  if (options.experiment) s.experiment = *options.experiment;
  if (options.seed) s.seed = *options.seed;
  if (options.trials) s.trials = *options.trials;
  if (s.agent_radius > 0.0) {
    for (auto& obs : s.obstacles) {
      if (!obs.is_boundary) obs.shape.margin += s.agent_radius;
    }
    if (s.arm) s.arm->obstacles = s.obstacles;
  }
  check(s);

  RunReport report;
  report.experiment = s.experiment;
  Writer w(options.out_dir, report);
  if (s.experiment == "field") {
    run_field(s, w, log);
  } else if (s.experiment == "trajectory") {
    run_trajectory(s, w, log);
  } else if (s.experiment == "comparison") {
    run_comparison(s, w, log);
  } else if (s.experiment == "corridor") {
    run_corridor(s, w, log);
  } else if (s.experiment == "arm") {
    run_arm(s, w, log);
  } else {
    throw ValidationError("unknown experiment '" + s.experiment + "'");
  }
  return report;
}

}  // namespace dsavoid::io
