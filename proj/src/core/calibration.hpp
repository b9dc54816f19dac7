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


#ifndef SNAKEFORGE_CORE_CALIBRATION_HPP_
#define SNAKEFORGE_CORE_CALIBRATION_HPP_

#include <array>

#include "core/dynamics.hpp"
#include "core/model.hpp"
#include "core/units.hpp"

namespace snakeforge::calibration
{

struct Targets
{
  double front_fill_s = 70.0;
  double rear_fill_s = 68.0;
  double fill_upstream_pa = units::psi_to_pa(2.9);
  double vent_time_constant_s = 3.5;
  double descent_acceleration_m_s2 = 0.045;
  double ascent_acceleration_m_s2 = 0.027;
  double dt_s = 0.01;
};

struct Result
{
  std::array<double, 2> flow_resistance{};  // front, rear
  std::array<double, 2> vent_resistance{};
  double drag_coefficient = 0.0;
  double added_mass_kg = 0.0;
  dynamics::TrajectorySummary descent;
  dynamics::TrajectorySummary ascent;
  int iterations = 0;
  double residual = 0.0;  // largest relative acceleration error
  bool converged = false;
  AssemblyPtr assembly;   // base assembly with the fitted constants
};

// Branch resistances from the closed-form fill time,
// t = (R V / s) ln(P / (P - s)), at the target upstream pressure.
double flow_resistance_for_fill_time(double fill_time_s, double full_volume_m3, double settle_pa, double upstream_pa);

// Dump resistance giving the requested exponential vent time constant.
double vent_resistance_for_time_constant(double tau_s, double full_volume_m3, double settle_pa);

// Pneumatic constants in closed form, then drag and added mass by damped
// Newton iteration on the built-in descent and ascent runs.
Result calibrate(const RobotAssembly & base, const Targets & targets = {});

// Mean window accelerations of the built-in runs for given constants.
std::array<dynamics::TrajectorySummary, 2> evaluate(const RobotAssembly & assembly, double dt_s);

}  // namespace snakeforge::calibration

#endif  // SNAKEFORGE_CORE_CALIBRATION_HPP_
