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

#include "core/kinematics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "core/error.hpp"

namespace snakeforge::kinematics
{

namespace
{

constexpr double kPi = std::numbers::pi;

std::string deg_text(double rad)
{
  std::ostringstream out;
  out.precision(4);
  out << units::rad_to_deg(rad) << " deg";
  return out.str();
}

void check_screw_speed(double speed, const DrivetrainSpec & drivetrain)
{
  require(
    speed >= 0.0 && speed <= drivetrain.max_screw_speed_rad_s, ErrorCode::kOutOfRange,
    "screw speed must be within [0, " + std::to_string(drivetrain.max_screw_speed_rad_s) + "] rad/s");
}

}  // namespace

std::vector<Frame> forward_kinematics(std::span<const JointAngles> joints, double segment_length_m)
{
  require(segment_length_m > 0.0, ErrorCode::kInvalidArgument, "segment length must be positive");
  const Eigen::Vector3d link(segment_length_m, 0.0, 0.0);
  std::vector<Frame> frames(joints.size() + 2);
  for (std::size_t i = 0; i + 1 < frames.size(); ++i) {
    frames[i + 1].position = frames[i].position + frames[i].orientation * link;
    frames[i + 1].orientation = frames[i].orientation;
    if (i < joints.size()) {
      frames[i + 1].orientation = frames[i].orientation *
        Eigen::AngleAxisd(joints[i].yaw_rad, Eigen::Vector3d::UnitZ()).toRotationMatrix() *
        Eigen::AngleAxisd(joints[i].pitch_rad, Eigen::Vector3d::UnitY()).toRotationMatrix();
    }
  }
  return frames;
}

std::vector<Eigen::Vector3d> segment_midpoints(std::span<const Frame> frames)
{
  std::vector<Eigen::Vector3d> mids;
  for (std::size_t i = 0; i + 1 < frames.size(); ++i) {
    mids.push_back(0.5 * (frames[i].position + frames[i + 1].position));
  }
  return mids;
}

const char * gait_mode_name(GaitMode mode)
{
  switch (mode) {
    case GaitMode::kIdle: return "idle";
    case GaitMode::kScrewing: return "screwing";
    case GaitMode::kWheeling: return "wheeling";
    case GaitMode::kSidewinding: return "sidewinding";
  }
  return "unknown";
}

std::optional<GaitMode> parse_gait_mode(std::string_view name)
{
  for (auto mode : {GaitMode::kIdle, GaitMode::kScrewing, GaitMode::kWheeling, GaitMode::kSidewinding}) {
    if (name == gait_mode_name(mode)) {
      return mode;
    }
  }
  return std::nullopt;
}

double arc_radius_for_angle(double theta_rad, double segment_length_m)
{
  if (theta_rad == 0.0) {
    return std::copysign(std::numeric_limits<double>::infinity(), theta_rad);
  }
  return segment_length_m / (2.0 * std::tan(0.5 * theta_rad));
}

double angle_for_arc_radius(double radius_m, double segment_length_m)
{
  require(radius_m != 0.0, ErrorCode::kInfeasible, "turn radius must be non-zero");
  if (std::isinf(radius_m)) {
    return 0.0;
  }
  return 2.0 * std::atan(segment_length_m / (2.0 * radius_m));
}

GaitCommand gait_screwing(double turn_radius_m, double screw_speed_rad_s, const RobotAssembly & assembly)
{
  require(!std::isnan(turn_radius_m), ErrorCode::kInvalidArgument, "turn radius is NaN");
  check_screw_speed(screw_speed_rad_s, assembly.drivetrain);
  const double limit = assembly.joint.yaw_limit_rad;
  const double min_radius = arc_radius_for_angle(limit, assembly.segment_length_m);
  if (std::abs(turn_radius_m) < min_radius) {
    std::ostringstream msg;
    msg << "turn radius " << std::abs(turn_radius_m) << " m is below the " << min_radius
        << " m minimum set by the yaw limit of " << deg_text(limit);
    throw Error(ErrorCode::kInfeasible, msg.str());
  }
  const double theta = angle_for_arc_radius(turn_radius_m, assembly.segment_length_m);

  GaitCommand cmd;
  cmd.mode = GaitMode::kScrewing;
  cmd.joints.assign(assembly.joint_count(), JointAngles{0.0, theta});
  cmd.screw_speeds_rad_s.assign(assembly.segments.size(), screw_speed_rad_s);
  return cmd;
}

GaitCommand gait_sidewinding(
  const SidewindingParams & p, double t_s, std::size_t n_joints, const JointSpec & limits, std::size_t n_screws)
{
  require(
    std::abs(p.pitch_amplitude_rad) <= limits.pitch_limit_rad, ErrorCode::kOutOfRange,
    "pitch amplitude " + deg_text(p.pitch_amplitude_rad) + " exceeds the joint limit of " +
    deg_text(limits.pitch_limit_rad));
  require(
    std::abs(p.yaw_amplitude_rad) <= limits.yaw_limit_rad, ErrorCode::kOutOfRange,
    "yaw amplitude " + deg_text(p.yaw_amplitude_rad) + " exceeds the joint limit of " +
    deg_text(limits.yaw_limit_rad));
  require(p.frequency_hz >= 0.0, ErrorCode::kInvalidArgument, "frequency must be non-negative");

  GaitCommand cmd;
  cmd.mode = GaitMode::kSidewinding;
  cmd.t_s = t_s;
  cmd.joints.resize(n_joints);
  const double base = 2.0 * kPi * p.frequency_hz * t_s;
  for (std::size_t i = 0; i < n_joints; ++i) {
    const double phase = base + static_cast<double>(i) * p.phase_lag_rad;
    cmd.joints[i].pitch_rad = p.pitch_amplitude_rad * std::sin(phase);
    cmd.joints[i].yaw_rad = p.yaw_amplitude_rad * std::sin(phase + 0.5 * kPi);
  }
  cmd.screw_speeds_rad_s.assign(n_screws, p.screw_speed_rad_s);
  return cmd;
}

GaitCommand gait_wheeling(
  double ground_speed_m_s, const DrivetrainSpec & drivetrain, std::size_t n_joints, std::size_t n_screws, double slip)
{
  require(ground_speed_m_s >= 0.0, ErrorCode::kInvalidArgument, "ground speed must be non-negative");
  require(slip >= 0.0 && slip < 1.0, ErrorCode::kInvalidArgument, "slip must be in [0, 1)");
  const double speed = ground_speed_m_s / (drivetrain.effective_screw_radius_m * (1.0 - slip));
  if (speed > drivetrain.max_screw_speed_rad_s) {
    std::ostringstream msg;
    msg << "ground speed " << ground_speed_m_s << " m/s needs " << speed << " rad/s, above the "
        << drivetrain.max_screw_speed_rad_s << " rad/s screw limit";
    throw Error(ErrorCode::kOutOfRange, msg.str());
  }
  GaitCommand cmd;
  cmd.mode = GaitMode::kWheeling;
  cmd.joints.assign(n_joints, JointAngles{});
  cmd.screw_speeds_rad_s.assign(n_screws, speed);
  return cmd;
}

double PlayOperator::apply(double input, double width)
{
  const double half = 0.5 * width;
  if (input > output_ + half) {
    output_ = input - half;
  } else if (input < output_ - half) {
    output_ = input + half;
  }
  return output_;
}

double apply_hysteresis(double commanded_rad, double load_kg, const HysteresisModel & model, PlayOperator & state)
{
  require(load_kg >= 0.0, ErrorCode::kInvalidArgument, "load must be non-negative");
  return state.apply(commanded_rad, model.width_rad(load_kg));
}

std::vector<SweepSample> hysteresis_sweep(
  double load_kg, const HysteresisModel & model, double amplitude_rad, int cycles, int samples_per_cycle)
{
  require(amplitude_rad > 0.0, ErrorCode::kInvalidArgument, "sweep amplitude must be positive");
  require(cycles >= 1 && samples_per_cycle >= 8, ErrorCode::kInvalidArgument, "sweep needs cycles and samples");
  PlayOperator play;
  std::vector<SweepSample> out;
  const int total = cycles * samples_per_cycle;
  out.reserve(static_cast<std::size_t>(total) + 1);
  for (int k = 0; k <= total; ++k) {
    const double cmd = amplitude_rad * std::sin(2.0 * kPi * k / samples_per_cycle);
    out.push_back({cmd, apply_hysteresis(cmd, load_kg, model, play)});
  }
  return out;
}

double measure_loop_width(std::span<const SweepSample> sweep, int samples_per_cycle)
{
  require(
    sweep.size() > static_cast<std::size_t>(samples_per_cycle), ErrorCode::kInvalidArgument,
    "sweep shorter than one cycle");
  const auto last = sweep.subspan(sweep.size() - static_cast<std::size_t>(samples_per_cycle) - 1);
  double lag_max = -std::numeric_limits<double>::infinity();
  double lag_min = std::numeric_limits<double>::infinity();
  for (const auto & s : last) {
    lag_max = std::max(lag_max, s.command_rad - s.actual_rad);
    lag_min = std::min(lag_min, s.command_rad - s.actual_rad);
  }
  return lag_max - lag_min;
}

double measure_loop_area(std::span<const SweepSample> sweep, int samples_per_cycle)
{
  require(
    sweep.size() > static_cast<std::size_t>(samples_per_cycle), ErrorCode::kInvalidArgument,
    "sweep shorter than one cycle");
  const auto last = sweep.subspan(sweep.size() - static_cast<std::size_t>(samples_per_cycle) - 1);
  double twice_area = 0.0;
  for (std::size_t i = 0; i + 1 < last.size(); ++i) {
    twice_area += last[i].command_rad * last[i + 1].actual_rad - last[i + 1].command_rad * last[i].actual_rad;
  }
  return 0.5 * std::abs(twice_area);
}

HysteresisModel fit_hysteresis(std::span<const std::pair<double, double>> points)
{
  require(points.size() >= 2, ErrorCode::kInvalidArgument, "need at least two points to fit");
  double mx = 0.0;
  double my = 0.0;
  for (const auto & [x, y] : points) {
    mx += x;
    my += y;
  }
  mx /= static_cast<double>(points.size());
  my /= static_cast<double>(points.size());
  double sxy = 0.0;
  double sxx = 0.0;
  for (const auto & [x, y] : points) {
    sxy += (x - mx) * (y - my);
    sxx += (x - mx) * (x - mx);
  }
  require(sxx > 0.0, ErrorCode::kInvalidArgument, "fit needs at least two distinct loads");
  HysteresisModel model;
  model.width_slope_rad_per_kg = sxy / sxx;
  model.width_intercept_rad = my - model.width_slope_rad_per_kg * mx;
  return model;
}

ScrewOutput screw_output(double motor_torque_nm, double commanded_speed_rad_s, const DrivetrainSpec & d)
{
  require(motor_torque_nm >= 0.0, ErrorCode::kInvalidArgument, "motor torque must be non-negative");
  check_screw_speed(commanded_speed_rad_s, d);

  ScrewOutput out;
  out.torque_limited = motor_torque_nm > d.motor_max_torque_nm;
  const double applied = std::min(motor_torque_nm, d.motor_max_torque_nm);
  out.extrapolated = commanded_speed_rad_s < d.curve_low_speed_rad_s ||
    commanded_speed_rad_s > d.curve_high_speed_rad_s;

  const double slope = (d.curve_high_force_n - d.curve_low_force_n) /
    (d.curve_high_speed_rad_s - d.curve_low_speed_rad_s);
  const double peak_force = std::max(
    0.0, d.curve_low_force_n + slope * (commanded_speed_rad_s - d.curve_low_speed_rad_s));
  const double peak_torque = peak_force * d.effective_screw_radius_m;

  // The curve was measured at full motor torque; lower requests scale it.
  const double share = applied / d.motor_max_torque_nm;
  out.tangential_force_n = peak_force * share;
  out.shell_torque_nm = peak_torque * share;
  out.ideal_torque_nm = applied * d.gear_ratio;
  out.efficiency = peak_torque / (d.motor_max_torque_nm * d.gear_ratio);
  return out;
}

}  // namespace snakeforge::kinematics
