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

#include "core/pneumatics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "core/error.hpp"

namespace snakeforge::pneumatics
{

namespace
{

double rk4_step(const BranchModel & m, double v, ValveMode mode, double upstream_pa, double h)
{
  const double k1 = m.flow(v, mode, upstream_pa);
  const double k2 = m.flow(v + 0.5 * h * k1, mode, upstream_pa);
  const double k3 = m.flow(v + 0.5 * h * k2, mode, upstream_pa);
  const double k4 = m.flow(v + h * k3, mode, upstream_pa);
  return v + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

}  // namespace

double head_loss(const TubeRun & tube, double mean_velocity_m_s, double g)
{
  require(mean_velocity_m_s >= 0.0, ErrorCode::kInvalidArgument, "mean velocity must be non-negative");
  require(g > 0.0, ErrorCode::kInvalidArgument, "gravity must be positive");
  require(
    tube.length_m > 0.0 && tube.inner_diameter_m > 0.0 && tube.darcy_friction_factor > 0.0,
    ErrorCode::kInvalidArgument, "tube length, diameter and friction factor must be positive");
  double k_sum = 0.0;
  for (double k : tube.minor_loss_coefficients) {
    require(k >= 0.0, ErrorCode::kInvalidArgument, "minor loss coefficients must be non-negative");
    k_sum += k;
  }
  const double resistance = tube.darcy_friction_factor * tube.length_m / tube.inner_diameter_m + k_sum;
  return resistance * mean_velocity_m_s * mean_velocity_m_s / (2.0 * g);
}

BranchLoss branch_head_loss(std::span<const TubeRun> tubes, double flow_m3_s, double air_density_kg_m3, double g)
{
  require(flow_m3_s >= 0.0, ErrorCode::kInvalidArgument, "flow must be non-negative");
  BranchLoss loss;
  loss.flow_m3_s = flow_m3_s;
  for (const auto & tube : tubes) {
    const double area = 0.25 * std::numbers::pi * tube.inner_diameter_m * tube.inner_diameter_m;
    loss.head_m += head_loss(tube, flow_m3_s / area, g);
  }
  loss.pressure_drop_pa = air_density_kg_m3 * g * loss.head_m;
  return loss;
}

const char * valve_mode_name(ValveMode mode)
{
  switch (mode) {
    case ValveMode::kClosed: return "closed";
    case ValveMode::kInflate: return "inflate";
    case ValveMode::kVent: return "vent";
  }
  return "unknown";
}

BranchModel BranchModel::from_assembly(const RobotAssembly & assembly, Branch branch)
{
  const auto & spec = assembly.pneumatics.branch(branch);
  BranchModel m;
  m.full_volume_m3 = assembly.branch_full_volume_m3(branch);
  m.settle_pressure_pa = assembly.bladder.settle_pressure_gauge_pa();
  m.flow_resistance = spec.flow_resistance;
  m.vent_resistance = spec.vent_resistance;
  return m;
}

double BranchModel::bladder_pressure(double volume_m3) const
{
  if (full_volume_m3 <= 0.0) {
    return 0.0;
  }
  return settle_pressure_pa * volume_m3 / full_volume_m3;
}

double BranchModel::flow(double volume_m3, ValveMode mode, double upstream_pa) const
{
  switch (mode) {
    case ValveMode::kClosed:
      return 0.0;
    case ValveMode::kInflate:
      return (upstream_pa - bladder_pressure(volume_m3)) / flow_resistance;
    case ValveMode::kVent:
      return -bladder_pressure(volume_m3) / vent_resistance;
  }
  return 0.0;
}

double BranchModel::advance(double volume_m3, ValveMode mode, double upstream_pa, double dt_s) const
{
  if (mode == ValveMode::kClosed || full_volume_m3 <= 0.0) {
    return volume_m3;
  }
  return std::clamp(rk4_step(*this, volume_m3, mode, upstream_pa, dt_s), 0.0, full_volume_m3);
}

FillTrace simulate_fill(const BranchModel & model, double upstream_pa, double dt_s, const FillOptions & options)
{
  require(dt_s > 0.0 && dt_s <= 1.0, ErrorCode::kInvalidArgument, "fill time step must be in (0, 1] s");
  require(upstream_pa >= 0.0, ErrorCode::kInvalidArgument, "upstream pressure must be non-negative");
  require(
    options.initial_volume_fraction >= 0.0 && options.initial_volume_fraction <= 1.0, ErrorCode::kOutOfRange,
    "initial fill fraction must be in [0, 1]");
  require(model.flow_resistance > 0.0, ErrorCode::kInvalidArgument, "branch flow resistance must be positive");

  FillTrace trace;
  trace.full_volume_m3 = model.full_volume_m3;
  if (!options.valve_open) {
    return trace;
  }

  const auto sample = [&](double t, double v) {
      trace.samples.push_back({t, v, model.bladder_pressure(v), model.flow(v, ValveMode::kInflate, upstream_pa)});
    };

  double v = options.initial_volume_fraction * model.full_volume_m3;
  sample(0.0, v);
  if (v >= model.full_volume_m3) {
    trace.completed = true;
    trace.fill_time_s = 0.0;
    return trace;
  }

  // Integer step counter keeps sample times free of accumulated drift.
  for (long step = 1;; ++step) {
    const double t_prev = static_cast<double>(step - 1) * dt_s;
    const double t = static_cast<double>(step) * dt_s;
    if (t_prev >= options.horizon_s) {
      break;
    }
    const double next = rk4_step(model, v, ValveMode::kInflate, upstream_pa, dt_s);
    if (next >= model.full_volume_m3) {
      const double frac = (model.full_volume_m3 - v) / (next - v);
      const double t_full = t_prev + frac * dt_s;
      sample(t_full, model.full_volume_m3);
      trace.completed = true;
      trace.fill_time_s = t_full;
      break;
    }
    v = std::max(next, 0.0);
    sample(t, v);
  }
  return trace;
}

FillTrace simulate_fill(
  const RobotAssembly & assembly, Branch branch, double upstream_pa, double dt_s, const FillOptions & options)
{
  return simulate_fill(BranchModel::from_assembly(assembly, branch), upstream_pa, dt_s, options);
}

UpstreamResult min_upstream_pressure(const RobotAssembly & assembly, double settle_pa, double deadline_s, double dt_s)
{
  require(settle_pa >= 0.0, ErrorCode::kInvalidArgument, "settle pressure must be non-negative");
  require(deadline_s > 0.0, ErrorCode::kInvalidArgument, "fill deadline must be positive");
  const double ceiling = assembly.pneumatics.compressor_limit_gauge_pa;

  std::array<BranchModel, 2> models;
  for (Branch b : kBranches) {
    models[static_cast<std::size_t>(b)] = BranchModel::from_assembly(assembly, b);
    models[static_cast<std::size_t>(b)].settle_pressure_pa = settle_pa;
  }

  FillOptions opts;
  opts.horizon_s = deadline_s + dt_s;
  const auto slowest = [&](double upstream, std::array<double, 2> & times) {
      double worst = 0.0;
      for (std::size_t i = 0; i < models.size(); ++i) {
        if (models[i].full_volume_m3 <= 0.0) {
          times[i] = 0.0;
          continue;
        }
        const auto trace = simulate_fill(models[i], upstream, dt_s, opts);
        times[i] = trace.completed ? trace.fill_time_s : std::numeric_limits<double>::infinity();
        worst = std::max(worst, times[i]);
      }
      return worst;
    };

  std::array<double, 2> times{};
  if (std::isinf(deadline_s)) {
    // Any supply above the settle pressure fills eventually.
    UpstreamResult result;
    result.pressure_pa = settle_pa;
    result.pressure_psi = units::pa_to_psi(settle_pa);
    result.fill_time_s = {deadline_s, deadline_s};
    return result;
  }
  if (slowest(ceiling, times) > deadline_s) {
    std::ostringstream msg;
    msg << "no regulator setting up to " << units::pa_to_psi(ceiling) << " psi fills the bladders within "
        << deadline_s << " s";
    throw Error(ErrorCode::kInfeasible, msg.str());
  }

  double lo = settle_pa;  // at the settle pressure itself the bag never fills
  double hi = ceiling;
  for (int i = 0; i < 100 && hi - lo > 1e-6; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (slowest(mid, times) <= deadline_s) {
      hi = mid;
    } else {
      lo = mid;
    }
  }

  UpstreamResult result;
  result.pressure_pa = hi;
  result.pressure_psi = units::pa_to_psi(hi);
  slowest(hi, result.fill_time_s);
  result.binding_branch = result.fill_time_s[0] >= result.fill_time_s[1] ? Branch::kFront : Branch::kRear;
  for (Branch b : kBranches) {
    const auto i = static_cast<std::size_t>(b);
    const double mean_flow = result.fill_time_s[i] > 0.0 ? models[i].full_volume_m3 / result.fill_time_s[i] : 0.0;
    result.head_loss[i] = branch_head_loss(
      assembly.pneumatics.branch(b).tubes, mean_flow, assembly.pneumatics.air_density_kg_m3, assembly.g_m_s2);
  }
  return result;
}

double inflation_error_vs_target(double fill_time_s, double target_s)
{
  require(target_s > 0.0, ErrorCode::kInvalidArgument, "target time must be positive");
  return (fill_time_s - target_s) / target_s;
}

}  // namespace snakeforge::pneumatics
