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

#include <stdexcept>
#include <string>

#include "dsavoid/sim.hpp"

namespace dsavoid::io {

// Malformed scenario document. `location` is "line L, column C" for syntax
// errors, a JSON pointer for structural ones and empty for I/O failures.
class ScenarioError : public std::runtime_error {
 public:
  ScenarioError(const std::string& location, const std::string& message)
      : std::runtime_error(location.empty() ? message : location + ": " + message),
        location_(location) {}

  const std::string& location() const noexcept { return location_; }

 private:
  std::string location_;
};

// Parses a scenario document. Unknown keys, wrong types and missing required
// keys raise ScenarioError. Semantic checks are left to sim::validate.
sim::Scenario parse_scenario(const std::string& text);

sim::Scenario load_scenario(const std::string& path);

// Canonical document: every field is written, orientations as matrices.
std::string serialize_scenario(const sim::Scenario& scenario);

}  // namespace dsavoid::io
