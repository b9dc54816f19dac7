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

#ifndef SNAKEFORGE_CORE_MODEL_HPP_
#define SNAKEFORGE_CORE_MODEL_HPP_

#include <array>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "core/units.hpp"

namespace snakeforge
{

constexpr double kDefaultGravity = 9.81;
constexpr double kDefaultWaterDensity = 1000.0;

enum class Branch
{
  kFront = 0,
  kRear = 1,
};
inline constexpr std::array kBranches = {Branch::kFront, Branch::kRear};

const char * branch_name(Branch branch);
std::optional<Branch> parse_branch(std::string_view name);

struct ShellSpec
{
  std::string name;
  double mass_kg = 0.0;
  double displaced_volume_m3 = 0.0;
  bool foam_filled = false;
  // Tabulated net force to cross-check against, if the manifest carries one.
  std::optional<double> reference_net_force_n;
};

// Torus bladder. Diameters are the tube (minor) and centerline-circle (major)
// diameters; the volume formula works on their halves.
class BladderSpec
{
public:
  BladderSpec() = default;

  // Throws Error(kValidation) unless 0 < minor < major and the settle pressure
  // is non-negative.
  BladderSpec(
    double minor_diameter_m, double major_diameter_m, double empty_mass_kg,
    double settle_pressure_gauge_pa);

  double minor_diameter_m() const {return minor_diameter_m_;}
  double major_diameter_m() const {return major_diameter_m_;}
  double empty_mass_kg() const {return empty_mass_kg_;}
  double settle_pressure_gauge_pa() const {return settle_pressure_gauge_pa_;}
  double full_volume_m3() const {return full_volume_m3_;}

  double seam_allowance_m = 0.0;
  std::optional<double> reference_net_force_n;

private:
  double minor_diameter_m_ = 0.0;
  double major_diameter_m_ = 0.0;
  double empty_mass_kg_ = 0.0;
  double settle_pressure_gauge_pa_ = 0.0;
  double full_volume_m3_ = 0.0;
};

struct SegmentSpec
{
  std::string name;
  double mass_kg = 0.0;
  double ballast_kg = 0.0;
  double displaced_volume_m3 = 0.0;
  std::vector<ShellSpec> shells;
  int bladder_slots = 0;
  Branch branch = Branch::kFront;
  std::optional<double> reference_net_force_n;

  double total_mass_kg() const {return mass_kg + ballast_kg;}
};

// Play width grows linearly with the load hung on the joint.
struct HysteresisModel
{
  double width_intercept_rad = units::deg_to_rad(1.94);
  double width_slope_rad_per_kg = units::deg_to_rad(0.354) / units::kPoundToKg;

  double width_rad(double load_kg) const {return width_intercept_rad + width_slope_rad_per_kg * load_kg;}
};

struct JointSpec
{
  double pitch_limit_rad = units::deg_to_rad(90.0);
  double yaw_limit_rad = units::deg_to_rad(90.0);
  double continuous_torque_nm = 2.6;
  double peak_torque_nm = 13.0;
  HysteresisModel hysteresis;
};

struct DrivetrainSpec
{
  double motor_max_torque_nm = 1.5;
  double gear_ratio = 7.0;
  double effective_screw_radius_m = 0.09;
  double ujoint_internal_ratio = 5.0;
  double ujoint_external_ratio = 1.8;
  double screw_continuous_torque_nm = 1.0;
  double screw_peak_torque_nm = 3.8;
  double max_screw_speed_rad_s = 50.0;
  // Measured peak tangential force at the shell, two points of a linear curve.
  double curve_low_speed_rad_s = 10.0;
  double curve_low_force_n = 40.0;
  double curve_high_speed_rad_s = 50.0;
  double curve_high_force_n = 75.9;
};

struct TubeRun
{
  double length_m = 0.0;
  double inner_diameter_m = 0.0;
  double darcy_friction_factor = 0.0;
  std::vector<double> minor_loss_coefficients;
};

struct BranchSpec
{
  std::vector<TubeRun> tubes;
  // Lumped linear resistances, Pa per (m^3/s).
  double flow_resistance = 0.0;
  double vent_resistance = 0.0;
};

struct PneumaticSpec
{
  double regulator_gauge_pa = units::psi_to_pa(2.9);
  double rise_upstream_gauge_pa = units::psi_to_pa(6.0);
  double compressor_limit_gauge_pa = units::psi_to_pa(15.0);
  double air_density_kg_m3 = 1.2;
  double fill_deadline_s = 60.0;
  std::array<BranchSpec, 2> branches;

  const BranchSpec & branch(Branch b) const {return branches[static_cast<std::size_t>(b)];}
};

struct HydroParams
{
  double drag_coefficient = 0.0;   // N s^2 / m^2
  double added_mass_kg = 0.0;
  double tank_depth_m = 1.5;
  // Fraction of the traverse used for summary statistics.
  double window_start = 0.25;
  double window_end = 0.75;
};

struct CommsSpec
{
  int node_count = 10;
  double first_hop_rtt_s = 0.73e-3;
  double per_node_rtt_increment_s = 0.91e-3;
  double jitter_bound_s = 0.0;
};

struct PowerSpec
{
  double segment_max_w = 240.0;
  double system_max_w = 960.0;
};

struct RobotAssembly
{
  std::string name;
  std::vector<SegmentSpec> segments;  // head first
  JointSpec joint;
  DrivetrainSpec drivetrain;
  BladderSpec bladder;
  PneumaticSpec pneumatics;
  HydroParams hydro;
  CommsSpec comms;
  PowerSpec power;
  double fluid_density_kg_m3 = kDefaultWaterDensity;
  double g_m_s2 = kDefaultGravity;
  double segment_length_m = 0.441;
  double max_length_m = 1.827;
  double max_diameter_m = 0.252;
  double internal_pressure_gauge_pa = units::psi_to_pa(6.0);

  // Non-fatal findings from validation, in document order.
  std::vector<std::string> warnings;

  int bladder_count() const;
  int bladder_count(Branch branch) const;
  double branch_full_volume_m3(Branch branch) const;
  // Dry mass of everything that moves with the robot.
  double total_mass_kg() const;
  std::size_t joint_count() const {return segments.empty() ? 0 : segments.size() - 1;}
};

using AssemblyPtr = std::shared_ptr<const RobotAssembly>;

}  // namespace snakeforge

#endif  // SNAKEFORGE_CORE_MODEL_HPP_
