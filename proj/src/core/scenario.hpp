// Copyright 2026 The Snakeforge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#ifndef SNAKEFORGE_CORE_SCENARIO_HPP_
#define SNAKEFORGE_CORE_SCENARIO_HPP_

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "core/dynamics.hpp"
#include "core/session.hpp"

namespace snakeforge::scenario
{

// A command message scheduled at a simulation time.
struct Event
{
  double t_s = 0.0;
  service::Json command;
};

struct Scenario
{
  std::string name;
  double horizon_s = 120.0;
  // Stop at this travel's far boundary and summarize; run to the horizon if unset.
  std::optional<dynamics::Travel> stop;
  service::InitialState initial;
  std::vector<Event> events;  // ascending time
};

// YAML scenario: name, horizon, stop (floor | surface | none), initial
// {depth, velocity, fill_front, fill_rear}, events [{at, action, ...}].
// Throws manifest::ManifestError with every issue found.
Scenario load_scenario(std::string_view document);
Scenario load_scenario_file(const std::string & path);

// Built-in calibration runs: full bladders dumped at the surface, and empty
// bladders inflated at the rise pressure on the floor.
Scenario descent_scenario(const RobotAssembly & assembly);
Scenario ascent_scenario(const RobotAssembly & assembly);

struct Run
{
  std::vector<service::Telemetry> records;  // starts with the t = 0 state
  std::optional<dynamics::TrajectorySummary> summary;
};

struct RunOptions
{
  service::Session::ApplyObserver on_apply;
  std::function<void (const service::Telemetry &)> on_record;
};

// Drives a session at tick rate 1/dt, submitting each event before the tick
// that starts at its (rounded) time.
Run run(const AssemblyPtr & assembly, const Scenario & scenario, double dt_s, const RunOptions & options = {});

}  // namespace snakeforge::scenario

#endif  // SNAKEFORGE_CORE_SCENARIO_HPP_
