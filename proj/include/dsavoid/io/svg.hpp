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

#include <functional>
#include <string>
#include <vector>

#include "dsavoid/sim.hpp"

namespace dsavoid::io {

struct FieldSample {
  Vec x;
  Vec velocity;
  double gamma_min = 0.0;
  // False where the grid point lies inside an obstacle.
  bool free = true;
};

using VelocityField = std::function<Vec(const Vec&)>;

// Regular resolution x resolution grid over [lower, upper]. Planar only.
std::vector<FieldSample> sample_field(const std::vector<geometry::Obstacle>& env,
                                      const VelocityField& field, const sim::PlotConfig& config);

// Quiver plot of the field with shaded obstacles, reference points as
// crosses, the attractor as a star and optional paths. Planar only.
std::string plot_field(const std::vector<geometry::Obstacle>& env, const Vec& attractor,
                       const VelocityField& field, const sim::PlotConfig& config,
                       const std::vector<std::vector<Vec>>& paths = {});

// Snapshots of a planar arm over its obstacles.
std::string plot_arm(const sim::ArmScenario& scenario, const sim::ArmResult& result,
                     int snapshots = 12);

// Viewport enclosing the obstacles, starts and attractor with a margin.
sim::PlotConfig default_plot_config(const sim::Scenario& scenario);

}  // namespace dsavoid::io
