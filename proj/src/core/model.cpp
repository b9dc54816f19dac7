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

#include "core/model.hpp"

#include "core/error.hpp"
#include "core/hydrostatics.hpp"

namespace snakeforge
{

const char * error_code_name(ErrorCode code)
{
  switch (code) {
    case ErrorCode::kInvalidArgument: return "invalid_argument";
    case ErrorCode::kParse: return "parse";
    case ErrorCode::kValidation: return "validation";
    case ErrorCode::kInfeasible: return "infeasible";
    case ErrorCode::kOutOfRange: return "out_of_range";
    case ErrorCode::kIo: return "io";
    case ErrorCode::kProtocol: return "protocol";
    case ErrorCode::kInternal: return "internal";
  }
  return "unknown";
}

const char * branch_name(Branch branch)
{
  return branch == Branch::kFront ? "front" : "rear";
}

std::optional<Branch> parse_branch(std::string_view name)
{
  if (name == "front") {
    return Branch::kFront;
  }
  if (name == "rear" || name == "back") {
    return Branch::kRear;
  }
  return std::nullopt;
}

BladderSpec::BladderSpec(
  double minor_diameter_m, double major_diameter_m, double empty_mass_kg, double settle_pressure_gauge_pa)
: minor_diameter_m_(minor_diameter_m),
  major_diameter_m_(major_diameter_m),
  empty_mass_kg_(empty_mass_kg),
  settle_pressure_gauge_pa_(settle_pressure_gauge_pa)
{
  require(
    minor_diameter_m > 0.0 && minor_diameter_m < major_diameter_m, ErrorCode::kValidation,
    "bladder minor diameter must be positive and smaller than the major diameter");
  require(empty_mass_kg >= 0.0, ErrorCode::kValidation, "bladder empty mass must be non-negative");
  require(settle_pressure_gauge_pa >= 0.0, ErrorCode::kValidation, "bladder settle pressure must be non-negative");
  full_volume_m3_ = hydro::torus_volume(minor_diameter_m, major_diameter_m);
}

int RobotAssembly::bladder_count() const
{
  int n = 0;
  for (const auto & segment : segments) {
    n += segment.bladder_slots;
  }
  return n;
}

int RobotAssembly::bladder_count(Branch branch) const
{
  int n = 0;
  for (const auto & segment : segments) {
    if (segment.branch == branch) {
      n += segment.bladder_slots;
    }
  }
  return n;
}

double RobotAssembly::branch_full_volume_m3(Branch branch) const
{
  return bladder.full_volume_m3() * bladder_count(branch);
}

double RobotAssembly::total_mass_kg() const
{
  double m = 0.0;
  for (const auto & segment : segments) {
    m += segment.total_mass_kg();
    for (const auto & shell : segment.shells) {
      m += shell.mass_kg;
    }
  }
  return m + bladder.empty_mass_kg() * bladder_count();
}

}  // namespace snakeforge
