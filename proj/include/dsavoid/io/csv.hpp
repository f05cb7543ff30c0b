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

#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "dsavoid/io/svg.hpp"
#include "dsavoid/sim.hpp"

namespace dsavoid::io {

// Doubles in CSV output use 17 significant digits.
std::string format_double(double v);

// Columns: t, x0 .. x{d-1}, gamma_min, speed.
void write_trajectory_csv(std::ostream& out, const std::vector<sim::Sample>& trajectory, int dim);

// Columns: start, outcome, distance, duration, mean_speed, speed_std,
// min_gamma, tail_speed, diagnostic.
void write_trajectory_summary_csv(std::ostream& out, const std::vector<sim::TrialResult>& results);

// Columns: controller, trials, converged, collided, local_minimum,
// converged_pct, collided_pct, local_minimum_pct, joint_converged, distance,
// duration, mean_speed, speed_std.
void write_comparison_csv(std::ostream& out, const sim::ComparisonResult& result);

// Columns: trial, then one outcome column per controller.
void write_comparison_outcomes_csv(std::ostream& out, const sim::ComparisonResult& result);

// Columns: flow, density, trials, completed, collided, distance, duration,
// mean_speed, speed_std.
void write_corridor_csv(std::ostream& out, const std::vector<sim::CorridorPoint>& points);

// Columns: converged, collided, min_gamma, max_budget, final_error, duration,
// diagnostic.
void write_arm_summary_csv(std::ostream& out, const sim::ArmResult& result);

// Columns: step, q0 .. q{n-1}.
void write_arm_joints_csv(std::ostream& out, const sim::ArmResult& result, int stride);

// Columns: x, y, vx, vy, gamma_min.
void write_field_csv(std::ostream& out, const std::vector<FieldSample>& samples);

std::string_view to_string(sim::Flow flow);

}  // namespace dsavoid::io
