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

#include "core/calibration.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

#include <Eigen/Dense>

#include "core/error.hpp"
#include "core/scenario.hpp"

namespace snakeforge::calibration
{

namespace
{

RobotAssembly with_hydro(const RobotAssembly & base, double drag, double added_mass)
{
  RobotAssembly a = base;
  a.hydro.drag_coefficient = drag;
  a.hydro.added_mass_kg = added_mass;
  return a;
}

}  // namespace

double flow_resistance_for_fill_time(double fill_time_s, double full_volume_m3, double settle_pa, double upstream_pa)
{
  require(fill_time_s > 0.0 && full_volume_m3 > 0.0, ErrorCode::kInvalidArgument, "fill time and volume must be positive");
  require(
    settle_pa > 0.0 && upstream_pa > settle_pa, ErrorCode::kInfeasible,
    "upstream pressure must exceed the settle pressure");
  return fill_time_s * settle_pa / (full_volume_m3 * std::log(upstream_pa / (upstream_pa - settle_pa)));
}

double vent_resistance_for_time_constant(double tau_s, double full_volume_m3, double settle_pa)
{
  require(
    tau_s > 0.0 && full_volume_m3 > 0.0 && settle_pa > 0.0, ErrorCode::kInvalidArgument,
    "vent time constant, volume and settle pressure must be positive");
  return tau_s * settle_pa / full_volume_m3;
}

std::array<dynamics::TrajectorySummary, 2> evaluate(const RobotAssembly & assembly, double dt_s)
{
  const auto ptr = std::make_shared<const RobotAssembly>(assembly);
  auto down = scenario::run(ptr, scenario::descent_scenario(assembly), dt_s);
  auto up = scenario::run(ptr, scenario::ascent_scenario(assembly), dt_s);
  return {*down.summary, *up.summary};
}

Result calibrate(const RobotAssembly & base, const Targets & targets)
{
  RobotAssembly a = base;
  const double settle = a.bladder.settle_pressure_gauge_pa();
  Result result;
  const std::array<double, 2> fill_times{targets.front_fill_s, targets.rear_fill_s};
  for (Branch b : kBranches) {
    const auto i = static_cast<std::size_t>(b);
    const double volume = a.branch_full_volume_m3(b);
    result.flow_resistance[i] = flow_resistance_for_fill_time(fill_times[i], volume, settle, targets.fill_upstream_pa);
    result.vent_resistance[i] = vent_resistance_for_time_constant(targets.vent_time_constant_s, volume, settle);
    a.pneumatics.branches[i].flow_resistance = result.flow_resistance[i];
    a.pneumatics.branches[i].vent_resistance = result.vent_resistance[i];
  }

  const Eigen::Vector2d goal(targets.descent_acceleration_m_s2, targets.ascent_acceleration_m_s2);
  // Relative errors as a function of (ln drag, ln added mass).
  const auto residual = [&](const Eigen::Vector2d & x, std::array<dynamics::TrajectorySummary, 2> * out) {
      const auto s = evaluate(with_hydro(a, std::exp(x[0]), std::exp(x[1])), targets.dt_s);
      if (out != nullptr) {
        *out = s;
      }
      const Eigen::Vector2d got(s[0].mean_acceleration_m_s2, s[1].mean_acceleration_m_s2);
      return Eigen::Vector2d((got.array() / goal.array() - 1.0).matrix());
    };

  Eigen::Vector2d x(std::log(100.0), std::log(500.0));
  Eigen::Vector2d r = residual(x, nullptr);
  constexpr double kTolerance = 1e-8;
  constexpr double kStep = 1e-3;
  int it = 0;
  for (; it < 60 && r.lpNorm<Eigen::Infinity>() > kTolerance; ++it) {
    Eigen::Matrix2d jac;
    for (int k = 0; k < 2; ++k) {
      Eigen::Vector2d xp = x;
      xp[k] += kStep;
      jac.col(k) = (residual(xp, nullptr) - r) / kStep;
    }
    Eigen::Vector2d dx = jac.fullPivLu().solve(-r);
    // Keep steps modest in log space and back off until the error shrinks.
    const double big = dx.lpNorm<Eigen::Infinity>();
    if (big > 1.0) {
      dx /= big;
    }
    bool improved = false;
    for (int half = 0; half < 30; ++half) {
      const Eigen::Vector2d trial = x + dx;
      const Eigen::Vector2d rt = residual(trial, nullptr);
      if (rt.norm() < r.norm()) {
        x = trial;
        r = rt;
        improved = true;
        break;
      }
      dx *= 0.5;
    }
    if (!improved) {
      break;
    }
  }

  std::array<dynamics::TrajectorySummary, 2> summaries;
  r = residual(x, &summaries);
  result.drag_coefficient = std::exp(x[0]);
  result.added_mass_kg = std::exp(x[1]);
  result.descent = summaries[0];
  result.ascent = summaries[1];
  result.iterations = it;
  result.residual = r.lpNorm<Eigen::Infinity>();
  result.converged = result.residual < 1e-4;
  result.assembly = std::make_shared<const RobotAssembly>(with_hydro(a, result.drag_coefficient, result.added_mass_kg));
  return result;
}

}  // namespace snakeforge::calibration
