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

#include "core/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "core/error.hpp"

namespace snakeforge::dynamics
{

namespace
{

double progress(double depth_m, Travel travel, double tank_depth_m)
{
  const double p = depth_m / tank_depth_m;
  return travel == Travel::kDescent ? p : 1.0 - p;
}

double interpolate(const pneumatics::FillTrace & trace, double t_s)
{
  const auto & s = trace.samples;
  const double full = trace.full_volume_m3;
  if (s.empty() || full <= 0.0) {
    return 0.0;
  }
  if (t_s <= s.front().t_s) {
    return s.front().volume_m3 / full;
  }
  if (t_s >= s.back().t_s) {
    return s.back().volume_m3 / full;
  }
  const auto hi = std::upper_bound(
    s.begin(), s.end(), t_s, [](double t, const pneumatics::FillSample & x) {return t < x.t_s;});
  const auto lo = hi - 1;
  const double span = hi->t_s - lo->t_s;
  const double w = span > 0.0 ? (t_s - lo->t_s) / span : 1.0;
  return (lo->volume_m3 + w * (hi->volume_m3 - lo->volume_m3)) / full;
}

double branch_fraction(const TimedTrace & timed, double t_s)
{
  if (t_s < timed.start_s) {
    return timed.initial_fraction;
  }
  if (timed.trace == nullptr) {
    return 0.0;
  }
  return interpolate(*timed.trace, t_s - timed.start_s);
}

Trajectory simulate(
  const RobotAssembly & assembly, const FillSchedule & fill, double dt_s, double horizon_s, Travel travel)
{
  require(dt_s > 0.0 && dt_s <= 0.1, ErrorCode::kInvalidArgument, "time step must be in (0, 0.1] s");
  require(horizon_s > 0.0, ErrorCode::kInvalidArgument, "horizon must be positive");
  require(static_cast<bool>(fill), ErrorCode::kInvalidArgument, "fill schedule is empty");
  const auto body = VerticalBody::from_assembly(assembly);
  const double tank = body.hydro.tank_depth_m;

  Trajectory out;
  VerticalState state;
  state.depth_m = travel == Travel::kDescent ? 0.0 : tank;
  out.states.push_back(state);
  const auto steps = static_cast<long>(std::ceil(horizon_s / dt_s - 1e-9));
  for (long k = 1; k <= steps; ++k) {
    const double t_next = static_cast<double>(k) * dt_s;
    state = step(body, fill(t_next), state, dt_s);
    state.t_s = t_next;
    out.states.push_back(state);
    if (progress(state.depth_m, travel, tank) >= 1.0) {
      break;
    }
  }
  out.summary = summarize(out.states, travel, body.hydro);
  if (!out.summary.terminated) {
    const double net_up = body.buoyancy.net_force(fill(out.states.back().t_s));
    const bool stuck = travel == Travel::kDescent ? net_up >= 0.0 : net_up <= 0.0;
    std::ostringstream msg;
    msg << out.summary.diagnosis << "; net upward force at the end is " << net_up << " N";
    if (stuck) {
      msg << (travel == Travel::kDescent ? ", so the robot never sinks" : ", so the robot never rises");
    }
    out.summary.diagnosis = msg.str();
  }
  return out;
}

}  // namespace

BuoyancyModel BuoyancyModel::from_assembly(const RobotAssembly & assembly)
{
  BuoyancyModel m;
  m.base_force_n = hydro::assembly_net_force(assembly, {0.0, 0.0});
  m.per_branch_n[0] = hydro::assembly_net_force(assembly, {1.0, 0.0}) - m.base_force_n;
  m.per_branch_n[1] = hydro::assembly_net_force(assembly, {0.0, 1.0}) - m.base_force_n;
  m.mass_kg = assembly.total_mass_kg();
  return m;
}

double BuoyancyModel::net_force(const hydro::BranchFill & fill) const
{
  return base_force_n + per_branch_n[0] * fill[0] + per_branch_n[1] * fill[1];
}

VerticalBody VerticalBody::from_assembly(const RobotAssembly & assembly)
{
  return {BuoyancyModel::from_assembly(assembly), assembly.hydro};
}

VerticalState step(
  const VerticalBody & body, const hydro::BranchFill & fill_end, const VerticalState & state, double dt_s)
{
  require(dt_s > 0.0 && dt_s <= 0.1, ErrorCode::kInvalidArgument, "time step must be in (0, 0.1] s");
  const double inertia = body.inertia_kg();
  require(inertia > 0.0, ErrorCode::kInvalidArgument, "mass plus added mass must be positive");
  const double tank = body.hydro.tank_depth_m;

  const double down_force = -body.buoyancy.net_force(fill_end);
  const double a_free = state.velocity_m_s + dt_s * down_force / inertia;
  const double k = dt_s * body.hydro.drag_coefficient / inertia;
  double v = a_free;
  if (k > 0.0 && a_free != 0.0) {
    // v + k v|v| = a_free, taken on the sign of a_free.
    const double mag = (std::sqrt(1.0 + 4.0 * k * std::abs(a_free)) - 1.0) / (2.0 * k);
    v = std::copysign(mag, a_free);
  }
  double depth = state.depth_m + 0.5 * (state.velocity_m_s + v) * dt_s;
  if (depth <= 0.0) {
    depth = 0.0;
    v = std::max(v, 0.0);
  } else if (depth >= tank) {
    depth = tank;
    v = std::min(v, 0.0);
  }

  VerticalState next;
  next.depth_m = depth;
  next.velocity_m_s = v;
  next.acceleration_m_s2 = (v - state.velocity_m_s) / dt_s;
  next.t_s = state.t_s + dt_s;
  return next;
}

VerticalState step(
  const RobotAssembly & assembly, const FillSchedule & fill, const VerticalState & state, double dt_s)
{
  return step(VerticalBody::from_assembly(assembly), fill(state.t_s + dt_s), state, dt_s);
}

FillSchedule constant_fill(hydro::BranchFill fill)
{
  return [fill](double) {return fill;};
}

FillSchedule couple_fill_to_buoyancy(TimedTrace front, TimedTrace rear)
{
  return [front, rear](double t_s) {
           return hydro::BranchFill{branch_fraction(front, t_s), branch_fraction(rear, t_s)};
         };
}

double terminal_velocity(double net_force_n, double drag_coefficient)
{
  require(drag_coefficient >= 0.0, ErrorCode::kInvalidArgument, "drag coefficient must be non-negative");
  if (drag_coefficient == 0.0) {
    return std::numeric_limits<double>::infinity();
  }
  return std::sqrt(std::abs(net_force_n) / drag_coefficient);
}

TrajectorySummary summarize(
  const std::vector<VerticalState> & trajectory, Travel travel, const HydroParams & hydro)
{
  require(!trajectory.empty(), ErrorCode::kInvalidArgument, "trajectory is empty");
  require(hydro.tank_depth_m > 0.0, ErrorCode::kInvalidArgument, "tank depth must be positive");
  require(
    0.0 <= hydro.window_start && hydro.window_start < hydro.window_end && hydro.window_end <= 1.0,
    ErrorCode::kInvalidArgument, "summary window must satisfy 0 <= start < end <= 1");

  TrajectorySummary s;
  s.travel = travel;
  const char * goal = travel == Travel::kDescent ? "floor" : "surface";
  const double sign = travel == Travel::kDescent ? 1.0 : -1.0;
  const double tank = hydro.tank_depth_m;

  std::size_t depart = trajectory.size();
  for (std::size_t i = 0; i < trajectory.size(); ++i) {
    s.peak_speed_m_s = std::max(s.peak_speed_m_s, std::abs(trajectory[i].velocity_m_s));
    if (depart == trajectory.size() && progress(trajectory[i].depth_m, travel, tank) > 0.0) {
      depart = i;
    }
  }
  std::ostringstream why;
  if (depart == trajectory.size()) {
    why << "never left the start boundary within " << trajectory.back().t_s << " s";
    s.diagnosis = why.str();
    return s;
  }
  s.departure_s = trajectory[depart == 0 ? 0 : depart - 1].t_s;

  // Window edges are located where progress first crosses each bound, with
  // time and velocity interpolated between the bracketing samples.
  struct Crossing
  {
    bool found = false;
    double t_s = 0.0;
    double velocity_m_s = 0.0;
  };
  Crossing lo;
  Crossing hi;
  const auto cross = [&](std::size_t i, double bound, Crossing & c) {
      const auto & b = trajectory[i];
      const double pb = progress(b.depth_m, travel, tank);
      if (c.found || pb < bound) {
        return;
      }
      c.found = true;
      c.t_s = b.t_s;
      c.velocity_m_s = b.velocity_m_s;
      if (i == 0) {
        return;
      }
      const auto & a = trajectory[i - 1];
      const double pa = progress(a.depth_m, travel, tank);
      if (pb > pa && pa < bound) {
        const double w = (bound - pa) / (pb - pa);
        c.t_s = a.t_s + w * (b.t_s - a.t_s);
        c.velocity_m_s = a.velocity_m_s + w * (b.velocity_m_s - a.velocity_m_s);
      }
    };

  std::size_t arrive = trajectory.size();
  for (std::size_t i = depart; i < trajectory.size(); ++i) {
    cross(i, hydro.window_start, lo);
    cross(i, hydro.window_end, hi);
    if (progress(trajectory[i].depth_m, travel, tank) >= 1.0) {
      arrive = i;
      break;
    }
  }
  if (lo.found && hi.found && hi.t_s > lo.t_s) {
    s.window_start_s = lo.t_s;
    s.window_end_s = hi.t_s;
    s.mean_acceleration_m_s2 = sign * (hi.velocity_m_s - lo.velocity_m_s) / (hi.t_s - lo.t_s);
  }
  if (arrive == trajectory.size()) {
    why << "did not reach the " << goal << " within " << trajectory.back().t_s << " s";
    s.diagnosis = why.str();
    return s;
  }
  s.terminated = true;
  s.arrival_s = trajectory[arrive].t_s;
  s.duration_s = s.arrival_s - s.departure_s;
  return s;
}

Trajectory simulate_descent(const RobotAssembly & assembly, const FillSchedule & fill, double dt_s, double horizon_s)
{
  return simulate(assembly, fill, dt_s, horizon_s, Travel::kDescent);
}

Trajectory simulate_ascent(const RobotAssembly & assembly, const FillSchedule & fill, double dt_s, double horizon_s)
{
  return simulate(assembly, fill, dt_s, horizon_s, Travel::kAscent);
}

}  // namespace snakeforge::dynamics
