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
#include <cstdint>
#include <exception>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "dsavoid/io/runner.hpp"
#include "dsavoid/io/scenario.hpp"

namespace {

using dsavoid::io::kExitOk;
using dsavoid::io::kExitRuntime;
using dsavoid::io::kExitValidation;

struct Command {
  std::string file;
  std::string out = "out";
  std::optional<std::uint64_t> seed;
  std::optional<int> trials;
};

CLI::App* add_command(CLI::App& app, const std::string& name, const std::string& help,
                      Command& cmd) {
  CLI::App* sub = app.add_subcommand(name, help);
  sub->add_option("scenario", cmd.file, "Scenario JSON file")->required();
  sub->add_option("--out", cmd.out, "Output directory")->capture_default_str();
  sub->add_option("--seed", cmd.seed, "Override experiment.seed");
  sub->add_option("--trials", cmd.trials, "Override experiment.trials")->check(CLI::PositiveNumber);
  return sub;
}

int execute(const Command& cmd, std::optional<std::string> experiment) {
  dsavoid::sim::Scenario scenario;
  try {
    scenario = dsavoid::io::load_scenario(cmd.file);
  } catch (const dsavoid::io::ScenarioError& e) {
    std::cerr << cmd.file << ": " << e.what() << "\n";
    return kExitValidation;
  }
  dsavoid::io::RunOptions options;
  options.out_dir = cmd.out;
  options.seed = cmd.seed;
  options.trials = cmd.trials;
  options.experiment = std::move(experiment);
  try {
    auto report = dsavoid::io::run_scenario(std::move(scenario), options, std::cout);
    for (const auto& f : report.files) std::cout << "wrote " << f << "\n";
  } catch (const dsavoid::io::ValidationError& e) {
    std::cerr << cmd.file << ": invalid scenario: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << cmd.file << ": runtime error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dynamical-system obstacle avoidance simulator"};
  app.require_subcommand(1);

  Command run, plot, compare, corridor, arm;
  auto* run_cmd = add_command(app, "run", "Run the experiment named in the scenario", run);
  auto* plot_cmd = add_command(app, "plot", "Plot the modulated field with streamlines", plot);
  auto* compare_cmd = add_command(app, "compare", "Three-controller comparison", compare);
  auto* corridor_cmd = add_command(app, "corridor", "Corridor crowd experiment", corridor);
  auto* arm_cmd = add_command(app, "arm", "Planar arm avoidance", arm);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitValidation;
  }

  if (*run_cmd) return execute(run, std::nullopt);
  if (*plot_cmd) return execute(plot, "field");
  if (*compare_cmd) return execute(compare, "comparison");
  if (*corridor_cmd) return execute(corridor, "corridor");
  if (*arm_cmd) return execute(arm, "arm");
  return kExitValidation;
}
