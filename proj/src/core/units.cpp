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

#include "core/units.hpp"

#include <array>
#include <charconv>
#include <cmath>

#include "core/error.hpp"

namespace snakeforge::units
{

namespace
{

using D = Dimension;

constexpr std::array kUnits = {
  UnitInfo{"kg", D::kMass, 1.0, false},
  UnitInfo{"g", D::kMass, 1.0e-3, false},
  UnitInfo{"lb", D::kMass, kPoundToKg, false},
  UnitInfo{"lbs", D::kMass, kPoundToKg, false},

  UnitInfo{"m", D::kLength, 1.0, false},
  UnitInfo{"cm", D::kLength, 1.0e-2, false},
  UnitInfo{"mm", D::kLength, 1.0e-3, false},
  UnitInfo{"in", D::kLength, 0.0254, false},
  UnitInfo{"ft", D::kLength, 0.3048, false},

  UnitInfo{"m3", D::kVolume, 1.0, false},
  UnitInfo{"L", D::kVolume, 1.0e-3, false},
  UnitInfo{"cm3", D::kVolume, 1.0e-6, false},
  UnitInfo{"mL", D::kVolume, 1.0e-6, false},

  // Pressures are gauge. "psia" appears in the source data for values that
  // only make sense as gauge readings, so it is accepted and flagged.
  UnitInfo{"Pa", D::kPressure, 1.0, false},
  UnitInfo{"kPa", D::kPressure, 1.0e3, false},
  UnitInfo{"MPa", D::kPressure, 1.0e6, false},
  UnitInfo{"bar", D::kPressure, kBarToPa, false},
  UnitInfo{"psi", D::kPressure, kPsiToPa, false},
  UnitInfo{"psig", D::kPressure, kPsiToPa, false},
  UnitInfo{"psia", D::kPressure, kPsiToPa, true},

  UnitInfo{"N", D::kForce, 1.0, false},
  UnitInfo{"kN", D::kForce, 1.0e3, false},
  UnitInfo{"lbf", D::kForce, 4.4482216152605, false},

  UnitInfo{"rad", D::kAngle, 1.0, false},
  UnitInfo{"deg", D::kAngle, kDegToRad, false},

  UnitInfo{"s", D::kTime, 1.0, false},
  UnitInfo{"ms", D::kTime, 1.0e-3, false},
  UnitInfo{"us", D::kTime, 1.0e-6, false},
  UnitInfo{"min", D::kTime, 60.0, false},

  UnitInfo{"W", D::kPower, 1.0, false},
  UnitInfo{"kW", D::kPower, 1.0e3, false},

  UnitInfo{"N*m", D::kTorque, 1.0, false},
  UnitInfo{"Nm", D::kTorque, 1.0, false},

  UnitInfo{"m/s", D::kVelocity, 1.0, false},
  UnitInfo{"mm/s", D::kVelocity, 1.0e-3, false},

  UnitInfo{"rad/s", D::kAngularVelocity, 1.0, false},
  UnitInfo{"deg/s", D::kAngularVelocity, kDegToRad, false},
  UnitInfo{"rpm", D::kAngularVelocity, 2.0 * std::numbers::pi / 60.0, false},

  UnitInfo{"kg/m3", D::kDensity, 1.0, false},

  UnitInfo{"m/s2", D::kAcceleration, 1.0, false},

  UnitInfo{"N*s2/m2", D::kDragCoefficient, 1.0, false},
  UnitInfo{"kg/m", D::kDragCoefficient, 1.0, false},

  UnitInfo{"Pa*s/m3", D::kFlowResistance, 1.0, false},

  UnitInfo{"Hz", D::kFrequency, 1.0, false},

  UnitInfo{"rad/kg", D::kAnglePerMass, 1.0, false},
  UnitInfo{"deg/lb", D::kAnglePerMass, kDegToRad / kPoundToKg, false},
};

std::string_view trim(std::string_view s)
{
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {s.remove_prefix(1);}
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) {s.remove_suffix(1);}
  return s;
}

}  // namespace

const char * dimension_name(Dimension dimension)
{
  switch (dimension) {
    case D::kDimensionless: return "dimensionless";
    case D::kMass: return "mass";
    case D::kLength: return "length";
    case D::kVolume: return "volume";
    case D::kPressure: return "pressure";
    case D::kForce: return "force";
    case D::kAngle: return "angle";
    case D::kTime: return "time";
    case D::kPower: return "power";
    case D::kTorque: return "torque";
    case D::kVelocity: return "velocity";
    case D::kAngularVelocity: return "angular velocity";
    case D::kDensity: return "density";
    case D::kAcceleration: return "acceleration";
    case D::kDragCoefficient: return "drag coefficient";
    case D::kFlowResistance: return "flow resistance";
    case D::kFrequency: return "frequency";
    case D::kAnglePerMass: return "angle per mass";
  }
  return "unknown";
}

const UnitInfo * find_unit(std::string_view symbol)
{
  for (const auto & unit : kUnits) {
    if (unit.symbol == symbol) {
      return &unit;
    }
  }
  return nullptr;
}

std::vector<const UnitInfo *> units_for(Dimension dimension)
{
  std::vector<const UnitInfo *> out;
  for (const auto & unit : kUnits) {
    if (unit.dimension == dimension) {
      out.push_back(&unit);
    }
  }
  return out;
}

double to_si(double value, std::string_view symbol)
{
  const UnitInfo * unit = find_unit(symbol);
  require(unit != nullptr, ErrorCode::kParse, "unknown unit '" + std::string(symbol) + "'");
  return value * unit->to_si;
}

double from_si(double value_si, std::string_view symbol)
{
  const UnitInfo * unit = find_unit(symbol);
  require(unit != nullptr, ErrorCode::kParse, "unknown unit '" + std::string(symbol) + "'");
  return value_si / unit->to_si;
}

ParsedQuantity parse_quantity(std::string_view text, Dimension expected)
{
  const std::string_view body = trim(text);
  const std::string quoted = "'" + std::string(text) + "'";
  require(!body.empty(), ErrorCode::kParse, "empty quantity");

  double value = 0.0;
  const char * first = body.data();
  const char * last = body.data() + body.size();
  if (*first == '+') {
    ++first;
  }
  auto [ptr, ec] = std::from_chars(first, last, value);
  require(ec == std::errc(), ErrorCode::kParse, "expected a number in " + quoted);
  require(std::isfinite(value), ErrorCode::kParse, "non-finite number in " + quoted);

  const std::string_view suffix = trim(std::string_view(ptr, static_cast<std::size_t>(last - ptr)));
  if (suffix.empty()) {
    require(
      expected == D::kDimensionless, ErrorCode::kParse,
      "missing unit suffix in " + quoted + " (expected " + dimension_name(expected) + ")");
    return {value, "", value, D::kDimensionless, false};
  }

  const UnitInfo * unit = find_unit(suffix);
  require(unit != nullptr, ErrorCode::kParse, "unknown unit '" + std::string(suffix) + "' in " + quoted);
  require(
    unit->dimension == expected, ErrorCode::kValidation,
    "unit '" + std::string(suffix) + "' is " + dimension_name(unit->dimension) + ", expected " +
    dimension_name(expected));
  return {value, std::string(suffix), value * unit->to_si, unit->dimension, unit->deprecated};
}

}  // namespace snakeforge::units
