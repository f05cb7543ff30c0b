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
#include "dsavoid/io/csv.hpp"

#include <cstdio>

namespace dsavoid::io {
namespace {

double pct(int count, int total) { return total > 0 ? 100.0 * count / total : 0.0; }

void write_metrics(std::ostream& out, const sim::Metrics& m) {
  out << format_double(m.distance) << ',' << format_double(m.duration) << ','
      << format_double(m.mean_speed) << ',' << format_double(m.speed_std);
}

// Diagnostics are free text; keep the row shape intact.
std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string_view to_string(sim::Flow flow) {
  return flow == sim::Flow::kCounter ? "counter" : "parallel";
}

void write_trajectory_csv(std::ostream& out, const std::vector<sim::Sample>& trajectory, int dim) {
  out << 't';
  for (int i = 0; i < dim; ++i) out << ",x" << i;
  out << ",gamma_min,speed\n";
  for (const auto& s : trajectory) {
    out << format_double(s.t);
    for (int i = 0; i < dim; ++i) out << ',' << format_double(s.x[i]);
    out << ',' << format_double(s.gamma_min) << ',' << format_double(s.speed) << '\n';
  }
}

void write_trajectory_summary_csv(std::ostream& out, const std::vector<sim::TrialResult>& results) {
  out << "start,outcome,distance,duration,mean_speed,speed_std,min_gamma,tail_speed,diagnostic\n";
  for (size_t i = 0; i < results.size(); ++i) {
    const auto& r = results[i];
    out << i << ',' << sim::to_string(r.outcome) << ',';
    write_metrics(out, r.metrics);
    out << ',' << format_double(r.min_gamma) << ',' << format_double(r.tail_speed) << ','
        << quote(r.diagnostic) << '\n';
  }
}

void write_comparison_csv(std::ostream& out, const sim::ComparisonResult& result) {
  out << "controller,trials,converged,collided,local_minimum,converged_pct,collided_pct,"
         "local_minimum_pct,joint_converged,distance,duration,mean_speed,speed_std\n";
  for (const auto& c : result.controllers) {
    out << c.name << ',' << result.trials << ',' << c.converged << ',' << c.collided << ','
        << c.local_minimum << ',' << format_double(pct(c.converged, result.trials)) << ','
        << format_double(pct(c.collided, result.trials)) << ','
        << format_double(pct(c.local_minimum, result.trials)) << ',' << result.joint_converged
        << ',';
    write_metrics(out, c.mean);
    out << '\n';
  }
}

void write_comparison_outcomes_csv(std::ostream& out, const sim::ComparisonResult& result) {
  out << "trial";
  for (const auto& c : result.controllers) out << ',' << c.name;
  out << '\n';
  for (size_t t = 0; t < result.outcomes.size(); ++t) {
    out << t;
    for (auto o : result.outcomes[t]) out << ',' << sim::to_string(o);
    out << '\n';
  }
}

void write_corridor_csv(std::ostream& out, const std::vector<sim::CorridorPoint>& points) {
  out << "flow,density,trials,completed,collided,distance,duration,mean_speed,speed_std\n";
  for (const auto& p : points) {
    out << to_string(p.flow) << ',' << format_double(p.density) << ',' << p.trials << ','
        << p.completed << ',' << p.collided << ',';
    write_metrics(out, p.mean);
    out << '\n';
  }
}

void write_arm_summary_csv(std::ostream& out, const sim::ArmResult& r) {
  out << "converged,collided,min_gamma,max_budget,final_error,duration,diagnostic\n";
  out << (r.converged ? 1 : 0) << ',' << (r.collided ? 1 : 0) << ',' << format_double(r.min_gamma)
      << ',' << format_double(r.max_budget) << ',' << format_double(r.final_error) << ','
      << format_double(r.duration) << ',' << quote(r.diagnostic) << '\n';
}

void write_arm_joints_csv(std::ostream& out, const sim::ArmResult& result, int stride) {
  int n = result.joint_trajectory.empty() ? 0 : static_cast<int>(result.joint_trajectory[0].size());
  out << "step";
  for (int i = 0; i < n; ++i) out << ",q" << i;
  out << '\n';
  for (size_t k = 0; k < result.joint_trajectory.size(); ++k) {
    out << k * static_cast<size_t>(stride);
    for (int i = 0; i < n; ++i) out << ',' << format_double(result.joint_trajectory[k][i]);
    out << '\n';
  }
}

void write_field_csv(std::ostream& out, const std::vector<FieldSample>& samples) {
  out << "x,y,vx,vy,gamma_min\n";
  for (const auto& s : samples) {
    if (!s.free) continue;
    out << format_double(s.x[0]) << ',' << format_double(s.x[1]) << ','
        << format_double(s.velocity[0]) << ',' << format_double(s.velocity[1]) << ','
        << format_double(s.gamma_min) << '\n';
  }
}

}  // namespace dsavoid::io
