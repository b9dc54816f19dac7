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

#ifndef SNAKEFORGE_CORE_DYNAMICS_HPP_
#define SNAKEFORGE_CORE_DYNAMICS_HPP_

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "core/hydrostatics.hpp"
#include "core/model.hpp"
#include "core/pneumatics.hpp"

namespace snakeforge::dynamics
{

// Depth and velocity are positive down.
struct VerticalState
{
  double depth_m = 0.0;
  double velocity_m_s = 0.0;
  double acceleration_m_s2 = 0.0;
  double t_s = 0.0;
};

// Whole-robot net upward force, affine in the two branch fills. Built from
// the buoyancy report so it matches it row for row.
struct BuoyancyModel
{
  double base_force_n = 0.0;       // all bladders empty
  hydro::BranchFill per_branch_n{};  // added by a full branch
  double mass_kg = 0.0;

  static BuoyancyModel from_assembly(const RobotAssembly & assembly);
  double net_force(const hydro::BranchFill & fill) const;
};

// Inertia and drag seen by the vertical motion.
struct VerticalBody
{
  BuoyancyModel buoyancy;
  HydroParams hydro;

  static VerticalBody from_assembly(const RobotAssembly & assembly);
  double inertia_kg() const {return buoyancy.mass_kg + hydro.added_mass_kg;}
};

// One step. Velocity first with drag taken implicitly, then position from
// the mean velocity; both tank boundaries stop the body. The reported
// acceleration is the step's velocity change over dt.
VerticalState step(
  const VerticalBody & body, const hydro::BranchFill & fill_end, const VerticalState & state, double dt_s);

using FillSchedule = std::function<hydro::BranchFill(double t_s)>;

VerticalState step(
  const RobotAssembly & assembly, const FillSchedule & fill, const VerticalState & state, double dt_s);

FillSchedule constant_fill(hydro::BranchFill fill);

// Piecewise-linear fill fraction per branch from fill traces. A missing or
// empty trace holds zero; each trace is shifted by its start time.
struct TimedTrace
{
  const pneumatics::FillTrace * trace = nullptr;
  double start_s = 0.0;
  double initial_fraction = 0.0;  // held before start_s
};
FillSchedule couple_fill_to_buoyancy(TimedTrace front, TimedTrace rear);

// |F| / c, or infinity without drag.
double terminal_velocity(double net_force_n, double drag_coefficient);

enum class Travel
{
  kDescent,
  kAscent,
};

struct TrajectorySummary
{
  Travel travel = Travel::kDescent;
  bool terminated = false;      // reached the far boundary
  std::string diagnosis;        // set when not terminated
  double duration_s = 0.0;      // leaving the start boundary to arrival
  double departure_s = 0.0;
  double arrival_s = 0.0;
  double mean_acceleration_m_s2 = 0.0;  // over the summary window, along travel
  double window_start_s = 0.0;
  double window_end_s = 0.0;
  double peak_speed_m_s = 0.0;
};

// Summary statistics over a sampled trajectory (first sample is the start).
TrajectorySummary summarize(
  const std::vector<VerticalState> & trajectory, Travel travel, const HydroParams & hydro);

struct Trajectory
{
  std::vector<VerticalState> states;
  TrajectorySummary summary;
};

// Surface to floor under a fill schedule.
Trajectory simulate_descent(
  const RobotAssembly & assembly, const FillSchedule & fill, double dt_s, double horizon_s = 600.0);

// Floor to surface under a fill schedule.
Trajectory simulate_ascent(
  const RobotAssembly & assembly, const FillSchedule & fill, double dt_s, double horizon_s = 600.0);

}  // namespace snakeforge::dynamics

#endif  // SNAKEFORGE_CORE_DYNAMICS_HPP_
