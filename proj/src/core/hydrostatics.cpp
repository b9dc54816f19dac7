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

#include "core/hydrostatics.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "core/error.hpp"

namespace snakeforge::hydro
{

namespace
{

constexpr double kPi = std::numbers::pi;

void check_fluid(double fluid_density, double g)
{
  require(fluid_density > 0.0, ErrorCode::kInvalidArgument, "fluid density must be positive");
  require(g > 0.0, ErrorCode::kInvalidArgument, "gravity must be positive");
}

void check_fill(double fill)
{
  require(
    fill >= 0.0 && fill <= 1.0, ErrorCode::kOutOfRange,
    "bladder fill fraction must be in [0, 1], got " + std::to_string(fill));
}

}  // namespace

const char * classification_name(Classification c)
{
  switch (c) {
    case Classification::kSinks: return "sinks";
    case Classification::kFloats: return "floats";
    case Classification::kNeutral: return "neutral";
  }
  return "unknown";
}

Classification classify(double net_force_n)
{
  if (net_force_n > kNeutralBandN) {
    return Classification::kFloats;
  }
  if (net_force_n < -kNeutralBandN) {
    return Classification::kSinks;
  }
  return Classification::kNeutral;
}

double buoyant_force(double volume_m3, double fluid_density, double g)
{
  require(volume_m3 >= 0.0, ErrorCode::kInvalidArgument, "displaced volume must be non-negative");
  check_fluid(fluid_density, g);
  return fluid_density * g * volume_m3;
}

double net_vertical_force(double mass_kg, double volume_m3, double fluid_density, double g)
{
  require(mass_kg >= 0.0, ErrorCode::kInvalidArgument, "mass must be non-negative");
  return buoyant_force(volume_m3, fluid_density, g) - mass_kg * g;
}

double torus_volume(double minor_diameter_m, double major_diameter_m)
{
  require(
    minor_diameter_m >= 0.0 && major_diameter_m > 0.0, ErrorCode::kInvalidArgument,
    "torus diameters must be positive");
  require(
    minor_diameter_m < major_diameter_m, ErrorCode::kInvalidArgument,
    "torus minor diameter must be smaller than the major diameter");
  const double r = 0.5 * minor_diameter_m;
  const double big_r = 0.5 * major_diameter_m;
  return 2.0 * kPi * kPi * r * r * big_r;
}

double solve_bladder_geometry(double target_volume_m3, double major_diameter_m, double envelope_diameter_m)
{
  require(target_volume_m3 >= 0.0, ErrorCode::kInvalidArgument, "target volume must be non-negative");
  require(major_diameter_m > 0.0, ErrorCode::kInvalidArgument, "major diameter must be positive");
  require(
    major_diameter_m <= envelope_diameter_m, ErrorCode::kInfeasible,
    "major diameter exceeds the joint envelope of " + std::to_string(envelope_diameter_m) + " m");
  const double big_r = 0.5 * major_diameter_m;
  const double r = std::sqrt(target_volume_m3 / (2.0 * kPi * kPi * big_r));
  const double minor = 2.0 * r;
  require(
    minor < major_diameter_m, ErrorCode::kInfeasible,
    "target volume needs a tube diameter of " + std::to_string(minor) +
    " m, which does not fit inside the major diameter");
  return minor;
}

FlatPattern flat_pattern(double major_diameter_m, double minor_diameter_m, double seam_allowance_m)
{
  require(major_diameter_m > 0.0, ErrorCode::kInvalidArgument, "major diameter must be positive");
  require(minor_diameter_m >= 0.0, ErrorCode::kInvalidArgument, "minor diameter must be non-negative");
  require(seam_allowance_m >= 0.0, ErrorCode::kInvalidArgument, "seam allowance must be non-negative");
  const double half_perimeter = 0.5 * kPi * minor_diameter_m;
  // Reject at the boundary itself, allowing for rounding in the product.
  const double slack = 8.0 * std::numeric_limits<double>::epsilon() * major_diameter_m;
  require(
    major_diameter_m - half_perimeter > slack, ErrorCode::kInfeasible,
    "flat pattern inner diameter is not positive (pi/2 * minor >= major)");
  FlatPattern pattern;
  pattern.outer_textile_diameter_m = major_diameter_m + half_perimeter;
  pattern.inner_textile_diameter_m = major_diameter_m - half_perimeter;
  pattern.seam_allowance_m = seam_allowance_m;
  return pattern;
}

TorusDiameters torus_from_pattern(const FlatPattern & pattern)
{
  return {
    0.5 * (pattern.outer_textile_diameter_m + pattern.inner_textile_diameter_m),
    (pattern.outer_textile_diameter_m - pattern.inner_textile_diameter_m) / kPi};
}

BuoyancyReportRow make_row(std::string item, double mass_kg, double volume_m3, double fluid_density, double g)
{
  BuoyancyReportRow row;
  row.item = std::move(item);
  row.weight_n = mass_kg * g;
  row.buoyant_force_n = buoyant_force(volume_m3, fluid_density, g);
  row.net_force_n = row.buoyant_force_n - row.weight_n;
  row.buoyancy_fraction = row.weight_n > 0.0 ? row.buoyant_force_n / row.weight_n :
    std::numeric_limits<double>::infinity();
  row.classification = classify(row.net_force_n);
  return row;
}

double required_bladder_force(
  std::span<const BuoyancyReportRow> rows, double margin_fraction, double fluid_density, double g)
{
  require(margin_fraction >= 0.0, ErrorCode::kInvalidArgument, "margin fraction must be non-negative");
  check_fluid(fluid_density, g);
  double net = 0.0;
  double displaced_weight = 0.0;
  for (const auto & row : rows) {
    net += row.net_force_n;
    displaced_weight += row.buoyant_force_n;
  }
  return -net + margin_fraction * displaced_weight;
}

BladderSizing size_bladder(
  std::span<const BuoyancyReportRow> rows, double bladder_empty_mass_kg, double margin_fraction,
  double buffer_fraction, double fluid_density, double g)
{
  require(buffer_fraction >= 0.0, ErrorCode::kInvalidArgument, "buffer fraction must be non-negative");
  require(bladder_empty_mass_kg >= 0.0, ErrorCode::kInvalidArgument, "bladder mass must be non-negative");
  BladderSizing sizing;
  for (const auto & row : rows) {
    sizing.deficit_n -= row.net_force_n;
    sizing.margin_basis_volume_m3 += row.buoyant_force_n / (fluid_density * g);
  }
  sizing.setpoint_n = required_bladder_force(rows, margin_fraction, fluid_density, g);
  sizing.buffered_n = sizing.setpoint_n * (1.0 + buffer_fraction);
  // The bag carries its own weight, so size for net force.
  sizing.bladder_volume_m3 = (sizing.buffered_n + bladder_empty_mass_kg * g) / (fluid_density * g);
  return sizing;
}

BuoyancyReport assembly_buoyancy_report(const RobotAssembly & assembly, const BranchFill & fill)
{
  check_fill(fill[0]);
  check_fill(fill[1]);
  const double rho = assembly.fluid_density_kg_m3;
  const double g = assembly.g_m_s2;
  const BladderSpec & bladder = assembly.bladder;

  BuoyancyReport report;
  for (const auto & segment : assembly.segments) {
    auto & seg_row = report.rows.emplace_back(
      make_row(segment.name, segment.total_mass_kg(), segment.displaced_volume_m3, rho, g));
    seg_row.reference_net_force_n = segment.reference_net_force_n;
    for (const auto & shell : segment.shells) {
      auto & row = report.rows.emplace_back(
        make_row(segment.name + "/" + shell.name, shell.mass_kg, shell.displaced_volume_m3, rho, g));
      row.reference_net_force_n = shell.reference_net_force_n;
    }
    const double branch_fill = fill[static_cast<std::size_t>(segment.branch)];
    for (int i = 0; i < segment.bladder_slots; ++i) {
      auto & row = report.rows.emplace_back(
        make_row(
          segment.name + "/bladder " + std::to_string(i + 1), bladder.empty_mass_kg(),
          bladder.full_volume_m3() * branch_fill, rho, g));
      // The tabulated bladder value describes a full bag only.
      if (branch_fill == 1.0) {
        row.reference_net_force_n = bladder.reference_net_force_n;
      }
    }
  }
  for (const auto & row : report.rows) {
    report.total_weight_n += row.weight_n;
    report.total_buoyant_force_n += row.buoyant_force_n;
    report.total_net_force_n += row.net_force_n;
  }
  report.classification = classify(report.total_net_force_n);
  return report;
}

double assembly_net_force(const RobotAssembly & assembly, const BranchFill & fill)
{
  return assembly_buoyancy_report(assembly, fill).total_net_force_n;
}

std::vector<std::string> reference_mismatches(const BuoyancyReport & report, double tolerance_fraction)
{
  std::vector<std::string> out;
  for (const auto & row : report.rows) {
    if (!row.reference_net_force_n) {
      continue;
    }
    const double ref = *row.reference_net_force_n;
    const double scale = std::max(std::abs(ref), kNeutralBandN);
    if (std::abs(row.net_force_n - ref) > tolerance_fraction * scale) {
      std::ostringstream msg;
      msg.precision(4);
      msg << row.item << ": tabulated net force " << ref << " N does not follow from its mass and volume (computed "
          << row.net_force_n << " N)";
      out.push_back(msg.str());
    }
  }
  return out;
}

double static_tilt_moment(const RobotAssembly & assembly, const BranchFill & fill)
{
  const auto report = assembly_buoyancy_report(assembly, fill);
  const double length = assembly.segment_length_m * static_cast<double>(assembly.segments.size());
  double moment = 0.0;
  std::size_t row = 0;
  for (std::size_t i = 0; i < assembly.segments.size(); ++i) {
    const auto & segment = assembly.segments[i];
    const double arm = 0.5 * length - (static_cast<double>(i) + 0.5) * assembly.segment_length_m;
    const std::size_t items = 1 + segment.shells.size() + static_cast<std::size_t>(segment.bladder_slots);
    for (std::size_t k = 0; k < items; ++k, ++row) {
      moment += report.rows[row].net_force_n * arm;
    }
  }
  return moment;
}

}  // namespace snakeforge::hydro
