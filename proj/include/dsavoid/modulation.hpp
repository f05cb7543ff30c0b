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

namespace dsavoid::modulation {

using geometry::LocalGeometry;
using geometry::Obstacle;

enum class BasisKind {
  // First basis column is the reference direction.
  kReference,
  // First basis column is the normal; no reference-point information.
  kOrthogonal,
};

struct ModulationParams {
  double reactivity = 1.0;
  double repulsion = 1.0;
  bool friction = false;
  // With the tail effect off, motion leaving an obstacle is not slowed.
  bool tail_effect = true;
  int weight_power = 3;
  BasisKind basis = BasisKind::kReference;
};

struct NominalDS {
  Vec attractor;
  double gain = 1.0;
  // Saturation of the nominal speed; infinite by default.
  double max_speed = geometry::kInfinity;
};

struct AgentLimits {
  double v_max = 1.0;
};

void validate(const ModulationParams& params);

Vec nominal_velocity(const Vec& x, const NominalDS& ds);

// E = [r, e_1 .. e_{d-1}] with tangents spanning the complement of the normal.
Mat basis_matrix(const Vec& x, const LocalGeometry& geo);

struct Eigenvalues {
  double radial = 1.0;
  double tangent = 1.0;
};

Eigenvalues eigenvalues(double gamma, const ModulationParams& params);

double repulsive_lambda_r(double gamma, const Vec& f, const Vec& r, const ModulationParams& params);

// Modulation matrix for one obstacle, given the (shifted) input velocity f.
Mat modulation_matrix(const Vec& f, const LocalGeometry& geo, bool is_boundary,
                      const ModulationParams& params);

Vec modulate_single(const Vec& x, const Vec& f, const Obstacle& obs,
                    const ModulationParams& params = {});

Vec apply_friction(const Vec& velocity, const Vec& f, double gamma);

std::vector<double> obstacle_weights(const std::vector<double>& gammas);

Vec combine_multi(const Vec& x, const Vec& f, const std::vector<Vec>& velocities,
                  const std::vector<double>& weights);

// Surface velocity of the obstacle relative to the world at x.
Vec relative_velocity(const Vec& x, const Obstacle& obs);

struct DynamicResult {
  Vec velocity;
  // Weighted relative velocity of all obstacles.
  Vec relative_total;
  std::vector<double> gammas;
  std::vector<double> weights;
  // Obstacle with the largest weight, -1 without obstacles.
  int dominant = -1;
  LocalGeometry dominant_geometry;
};

DynamicResult evaluate_dynamic(const Vec& x, const Vec& f, const std::vector<Obstacle>& env,
                               const ModulationParams& params = {});

Vec modulate_dynamic(const Vec& x, const Vec& f, const std::vector<Obstacle>& env,
                     const ModulationParams& params = {});

// Crops a modulated velocity to the speed limit while keeping the normal
// component needed to outrun the obstacle surface.
Vec safe_velocity(const Vec& velocity, const LocalGeometry& geo, const Vec& obstacle_velocity,
                  const AgentLimits& limits);

}  // namespace dsavoid::modulation
