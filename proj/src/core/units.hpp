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

#ifndef SNAKEFORGE_CORE_UNITS_HPP_
#define SNAKEFORGE_CORE_UNITS_HPP_

#include <numbers>
#include <string>
#include <string_view>
#include <vector>

namespace snakeforge::units
{

// Everything past the I/O boundary is SI: kg, m, s, N, Pa (gauge), rad, W.
// Unit-tagged text is converted here exactly once.

enum class Dimension
{
  kDimensionless,
  kMass,
  kLength,
  kVolume,
  kPressure,
  kForce,
  kAngle,
  kTime,
  kPower,
  kTorque,
  kVelocity,
  kAngularVelocity,
  kDensity,
  kAcceleration,
  kDragCoefficient,
  kFlowResistance,
  kFrequency,
  kAnglePerMass,
};

const char * dimension_name(Dimension dimension);

struct UnitInfo
{
  std::string_view symbol;
  Dimension dimension;
  double to_si;      // SI value = value * to_si
  bool deprecated;   // accepted but reported (e.g. "psia", read as gauge)
};

constexpr double kPsiToPa = 6894.757293168361;
constexpr double kPoundToKg = 0.45359237;
constexpr double kDegToRad = std::numbers::pi / 180.0;
constexpr double kBarToPa = 1.0e5;

// Looks up a unit symbol; returns nullptr when unknown.
const UnitInfo * find_unit(std::string_view symbol);

// All symbols known for a dimension, in table order.
std::vector<const UnitInfo *> units_for(Dimension dimension);

double to_si(double value, std::string_view symbol);
double from_si(double value_si, std::string_view symbol);

struct ParsedQuantity
{
  double value;         // raw magnitude as written
  std::string unit;     // as written, empty for bare numbers
  double si;            // converted
  Dimension dimension;
  bool deprecated_unit;
};

// Parses "5.386 kg", "2.9psi", "-39.2 N". Throws Error(kParse) for malformed
// text or an unknown unit, Error(kValidation) when the dimension is wrong.
ParsedQuantity parse_quantity(std::string_view text, Dimension expected);

inline double psi_to_pa(double psi) {return psi * kPsiToPa;}
inline double pa_to_psi(double pa) {return pa / kPsiToPa;}
inline double deg_to_rad(double deg) {return deg * kDegToRad;}
inline double rad_to_deg(double rad) {return rad / kDegToRad;}
inline double lb_to_kg(double lb) {return lb * kPoundToKg;}
inline double kg_to_lb(double kg) {return kg / kPoundToKg;}

}  // namespace snakeforge::units

#endif  // SNAKEFORGE_CORE_UNITS_HPP_
