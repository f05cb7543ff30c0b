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
#include <optional>
#include <stdexcept>
#include <ostream>
#include <string>
#include <vector>

#include "dsavoid/sim.hpp"

namespace dsavoid::io {

// Scenario rejected before any simulation ran.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunOptions {
  std::string out_dir = "out";
  std::optional<std::uint64_t> seed;
  std::optional<int> trials;
  // Overrides experiment.type when set.
  std::optional<std::string> experiment;
};

struct RunReport {
  std::string experiment;
  std::vector<std::string> files;
};

// Validates the scenario, runs the experiment it names and writes the
// artifacts into options.out_dir. Progress lines go to `log`. Comparison
// trials and seed come from the experiment section.
RunReport run_scenario(sim::Scenario scenario, const RunOptions& options, std::ostream& log);

// Process exit codes of the command-line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitRuntime = 3;

}  // namespace dsavoid::io
