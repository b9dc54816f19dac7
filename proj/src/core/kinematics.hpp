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

#ifndef SNAKEFORGE_CORE_KINEMATICS_HPP_
#define SNAKEFORGE_CORE_KINEMATICS_HPP_

#include <Eigen/Geometry>

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "core/model.hpp"

namespace snakeforge::kinematics
{

// Body frame: x along the chain toward the tail, z up. Yaw turns about z,
// pitch about the yawed y axis.
struct Frame
{
  Eigen::Vector3d position = Eigen::Vector3d::Zero();
  Eigen::Matrix3d orientation = Eigen::Matrix3d::Identity();
};

struct JointAngles
{
  double pitch_rad = 0.0;
  double yaw_rad = 0.0;
};

// Frames at the start of each segment plus the chain end: n joints give
// n + 2 frames. Frame i+1 advances frame i by one segment length and then
// applies joint i.
std::vector<Frame> forward_kinematics(std::span<const JointAngles> joints, double segment_length_m);

// Segment midpoints, one per segment.
std::vector<Eigen::Vector3d> segment_midpoints(std::span<const Frame> frames);

enum class GaitMode
{
  kIdle,
  kScrewing,
  kWheeling,
  kSidewinding,
};

const char * gait_mode_name(GaitMode mode);
std::optional<GaitMode> parse_gait_mode(std::string_view name);

struct GaitCommand
{
  GaitMode mode = GaitMode::kIdle;
  std::vector<JointAngles> joints;
  std::vector<double> screw_speeds_rad_s;
  double t_s = 0.0;
};

// Common joint angle that bends a chain of links of length l onto a circle of
// radius R (measured to link midpoints): R = l / (2 tan(theta / 2)).
double arc_radius_for_angle(double theta_rad, double segment_length_m);
double angle_for_arc_radius(double radius_m, double segment_length_m);

// Every yaw joint at the common arc angle; infinite radius runs straight.
// Throws Error(kInfeasible) for radii the yaw limit cannot reach.
GaitCommand gait_screwing(double turn_radius_m, double screw_speed_rad_s, const RobotAssembly & assembly);

struct SidewindingParams
{
  double pitch_amplitude_rad = 0.0;
  double yaw_amplitude_rad = 0.0;
  double frequency_hz = 0.5;
  double phase_lag_rad = 0.0;
  double screw_speed_rad_s = 0.0;
};

// pitch_i = A_p sin(2 pi f t + i phi), yaw_i = A_y sin(2 pi f t + i phi + pi/2).
GaitCommand gait_sidewinding(
  const SidewindingParams & params, double t_s, std::size_t n_joints, const JointSpec & limits,
  std::size_t n_screws = 0);

// Straight chain with screws turning fast enough for the ground speed.
GaitCommand gait_wheeling(
  double ground_speed_m_s, const DrivetrainSpec & drivetrain, std::size_t n_joints, std::size_t n_screws,
  double slip = 0.0);

// Backlash (play) operator. The output stays put while the input moves inside
// a band of total width w around it, and trails the input by w/2 otherwise.
class PlayOperator
{
public:
  explicit PlayOperator(double initial_output = 0.0) : output_(initial_output) {}

  double apply(double input, double width);
  double output() const {return output_;}

private:
  double output_;
};

// Commanded angle through the load-dependent play of one joint axis.
double apply_hysteresis(double commanded_rad, double load_kg, const HysteresisModel & model, PlayOperator & state);

struct SweepSample
{
  double command_rad;
  double actual_rad;
};

// Sine sweep between +/- amplitude, starting at zero with a centred play state.
std::vector<SweepSample> hysteresis_sweep(
  double load_kg, const HysteresisModel & model, double amplitude_rad, int cycles = 3, int samples_per_cycle = 720);

// Separation between the loading and unloading branches over the final
// cycle of a sweep, measured along the command axis.
double measure_loop_width(std::span<const SweepSample> sweep, int samples_per_cycle = 720);
// Enclosed area of the final cycle (rad^2).
double measure_loop_area(std::span<const SweepSample> sweep, int samples_per_cycle = 720);

// Least-squares line through (load, width) pairs.
HysteresisModel fit_hysteresis(std::span<const std::pair<double, double>> load_kg_width_rad);

struct ScrewOutput
{
  double tangential_force_n = 0.0;
  double shell_torque_nm = 0.0;
  double efficiency = 0.0;
  double ideal_torque_nm = 0.0;  // motor torque times gear ratio
  bool extrapolated = false;     // speed outside the measured curve
  bool torque_limited = false;   // request exceeded the motor's max
};

// Measured-curve drivetrain model: peak shell force linear in commanded speed
// between the two measured points; torque is force times effective radius.
ScrewOutput screw_output(double motor_torque_nm, double commanded_speed_rad_s, const DrivetrainSpec & drivetrain);

}  // namespace snakeforge::kinematics

#endif  // SNAKEFORGE_CORE_KINEMATICS_HPP_
