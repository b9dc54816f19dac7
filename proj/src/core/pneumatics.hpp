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

#ifndef SNAKEFORGE_CORE_PNEUMATICS_HPP_
#define SNAKEFORGE_CORE_PNEUMATICS_HPP_

#include <array>
#include <span>
#include <vector>

#include "core/model.hpp"

namespace snakeforge::pneumatics
{

// Darcy-Weisbach head, (f_D L / D + sum K) v^2 / 2g, in metres of the
// flowing fluid.
double head_loss(const TubeRun & tube, double mean_velocity_m_s, double g = kDefaultGravity);

struct BranchLoss
{
  double flow_m3_s = 0.0;
  double head_m = 0.0;          // summed over the branch's tube runs
  double pressure_drop_pa = 0.0;  // rho_air * g * head
};

// Head loss of a branch at a volumetric flow; each run sees v = Q / A.
BranchLoss branch_head_loss(
  std::span<const TubeRun> tubes, double flow_m3_s, double air_density_kg_m3, double g = kDefaultGravity);

enum class ValveMode
{
  kClosed,
  kInflate,  // connected to the regulated supply
  kVent,     // dumped to ambient
};

const char * valve_mode_name(ValveMode mode);

// Lumped model of one branch: all its bladders fill together through a linear
// resistance, and bladder gauge pressure rises linearly with volume from zero
// (slack) to the settle pressure (taut).
struct BranchModel
{
  double full_volume_m3 = 0.0;
  double settle_pressure_pa = 0.0;
  double flow_resistance = 0.0;   // Pa s / m^3, supply side
  double vent_resistance = 0.0;   // Pa s / m^3, dump side

  static BranchModel from_assembly(const RobotAssembly & assembly, Branch branch);

  double bladder_pressure(double volume_m3) const;
  // dV/dt for the given valve state.
  double flow(double volume_m3, ValveMode mode, double upstream_pa) const;
  // One RK4 step of dV/dt, clamped to [0, full].
  double advance(double volume_m3, ValveMode mode, double upstream_pa, double dt_s) const;
};

struct FillSample
{
  double t_s;
  double volume_m3;
  double pressure_pa;
  double flow_m3_s;
};

struct FillTrace
{
  std::vector<FillSample> samples;
  bool completed = false;     // reached full volume
  double fill_time_s = 0.0;   // time of reaching full volume, if completed
  double full_volume_m3 = 0.0;
};

struct FillOptions
{
  double initial_volume_fraction = 0.0;
  double horizon_s = 3600.0;  // give up if not full by then
  bool valve_open = true;
};

// Integrates the branch fill from the given state until full. The last
// sample sits at the interpolated crossing time.
FillTrace simulate_fill(const BranchModel & model, double upstream_pa, double dt_s, const FillOptions & options = {});

FillTrace simulate_fill(const RobotAssembly & assembly, Branch branch, double upstream_pa, double dt_s,
  const FillOptions & options = {});

struct UpstreamResult
{
  double pressure_pa = 0.0;
  double pressure_psi = 0.0;
  Branch binding_branch = Branch::kFront;
  std::array<double, 2> fill_time_s{};  // per branch at the returned pressure
  std::array<BranchLoss, 2> head_loss{};  // at each branch's mean fill flow
};

// Smallest regulator setting that fills every branch by the deadline.
// Throws Error(kInfeasible) when even the compressor limit is too slow.
UpstreamResult min_upstream_pressure(
  const RobotAssembly & assembly, double settle_pa, double deadline_s, double dt_s = 0.01);

// (fill - target) / target.
double inflation_error_vs_target(double fill_time_s, double target_s);

}  // namespace snakeforge::pneumatics

#endif  // SNAKEFORGE_CORE_PNEUMATICS_HPP_
