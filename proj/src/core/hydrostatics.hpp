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

#ifndef SNAKEFORGE_CORE_HYDROSTATICS_HPP_
#define SNAKEFORGE_CORE_HYDROSTATICS_HPP_

#include <array>
#include <span>
#include <string>
#include <vector>

#include "core/model.hpp"

namespace snakeforge::hydro
{

// Rows within this band of zero are reported as neutral.
constexpr double kNeutralBandN = 0.05;
// Default buoyancy shift around neutral, and the sizing buffer on top of it.
constexpr double kDefaultMarginFraction = 0.05;
constexpr double kDefaultSizingBuffer = 0.05;

enum class Classification
{
  kSinks,
  kFloats,
  kNeutral,
};

const char * classification_name(Classification c);
Classification classify(double net_force_n);

// rho * g * V. Negative volume or non-positive density is rejected.
double buoyant_force(double volume_m3, double fluid_density = kDefaultWaterDensity, double g = kDefaultGravity);

// Buoyant force minus weight; positive floats.
double net_vertical_force(
  double mass_kg, double volume_m3, double fluid_density = kDefaultWaterDensity,
  double g = kDefaultGravity);

// Torus volume 2 pi^2 r^2 R, where r and R are half the given diameters.
double torus_volume(double minor_diameter_m, double major_diameter_m);

// Inverse of torus_volume for the tube diameter. Throws Error(kInfeasible)
// when the tube would not fit inside the major diameter.
double solve_bladder_geometry(
  double target_volume_m3, double major_diameter_m, double envelope_diameter_m = 0.252);

struct FlatPattern
{
  double outer_textile_diameter_m = 0.0;
  double inner_textile_diameter_m = 0.0;
  double seam_allowance_m = 0.0;

  // Diameters to cut, seam allowance added on both edges of the ring.
  double cut_outer_diameter_m() const {return outer_textile_diameter_m + 2.0 * seam_allowance_m;}
  double cut_inner_diameter_m() const {return inner_textile_diameter_m - 2.0 * seam_allowance_m;}
};

// Textile ring that inflates to the given torus: D_major +/- (pi/2) D_minor.
// Throws Error(kInfeasible) when the inner diameter would not be positive.
FlatPattern flat_pattern(double major_diameter_m, double minor_diameter_m, double seam_allowance_m = 0.0);

struct TorusDiameters
{
  double major_diameter_m;
  double minor_diameter_m;
};

// Recovers the torus from a flat pattern.
TorusDiameters torus_from_pattern(const FlatPattern & pattern);

struct BuoyancyReportRow
{
  std::string item;
  double weight_n = 0.0;
  double buoyant_force_n = 0.0;
  double net_force_n = 0.0;
  double buoyancy_fraction = 0.0;
  Classification classification = Classification::kNeutral;
  std::optional<double> reference_net_force_n;
};

BuoyancyReportRow make_row(
  std::string item, double mass_kg, double volume_m3, double fluid_density = kDefaultWaterDensity,
  double g = kDefaultGravity);

struct BladderSizing
{
  double deficit_n = 0.0;           // force needed to reach neutral
  double margin_basis_volume_m3 = 0.0;
  double setpoint_n = 0.0;          // deficit plus the buoyant margin
  double buffered_n = 0.0;          // setpoint plus the sizing buffer
  double bladder_volume_m3 = 0.0;   // volume whose net force equals buffered_n
};

// Force a bladder must add to the given rows (segment plus its shells) so the
// group floats with margin_fraction of its displaced-water weight in reserve.
double required_bladder_force(
  std::span<const BuoyancyReportRow> rows, double margin_fraction = kDefaultMarginFraction,
  double fluid_density = kDefaultWaterDensity, double g = kDefaultGravity);

// Full sizing chain: deficit, setpoint, buffered force and bladder volume.
BladderSizing size_bladder(
  std::span<const BuoyancyReportRow> rows, double bladder_empty_mass_kg,
  double margin_fraction = kDefaultMarginFraction, double buffer_fraction = kDefaultSizingBuffer,
  double fluid_density = kDefaultWaterDensity, double g = kDefaultGravity);

struct BuoyancyReport
{
  std::vector<BuoyancyReportRow> rows;
  double total_weight_n = 0.0;
  double total_buoyant_force_n = 0.0;
  double total_net_force_n = 0.0;
  Classification classification = Classification::kNeutral;
};

// Fill fraction per branch (front, rear), each in [0, 1].
using BranchFill = std::array<double, 2>;

// Per item rows plus totals. Bladder volume scales linearly with fill.
BuoyancyReport assembly_buoyancy_report(const RobotAssembly & assembly, const BranchFill & fill);

// Net upward force of the whole assembly at the given fill. Same sum as the
// report, without building rows.
double assembly_net_force(const RobotAssembly & assembly, const BranchFill & fill);

// Table cross-check: rows whose tabulated net force differs from the computed
// one by more than tolerance_fraction. Each entry is a human-readable warning.
std::vector<std::string> reference_mismatches(const BuoyancyReport & report, double tolerance_fraction = 0.02);

// Pitching moment about the assembly midpoint from differential fill,
// positive nose-up. Items sit at their segment's midpoint station.
double static_tilt_moment(const RobotAssembly & assembly, const BranchFill & fill);

}  // namespace snakeforge::hydro

#endif  // SNAKEFORGE_CORE_HYDROSTATICS_HPP_
