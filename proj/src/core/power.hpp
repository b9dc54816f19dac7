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


#ifndef SNAKEFORGE_CORE_POWER_HPP_
#define SNAKEFORGE_CORE_POWER_HPP_

#include <span>
#include <string>
#include <vector>

#include "core/model.hpp"

namespace snakeforge
{

struct SegmentPower
{
  std::size_t index = 0;
  std::string name;
  double draw_w = 0.0;
  bool pass = true;
};

struct PowerReport
{
  std::vector<SegmentPower> segments;
  double segment_limit_w = 0.0;
  double system_w = 0.0;
  double system_limit_w = 0.0;
  bool system_pass = true;
  bool pass = true;  // every segment and the system total
};

// Limits are inclusive. Expects one non-negative draw per segment.
PowerReport power_budget_check(const RobotAssembly & assembly, std::span<const double> per_segment_draw_w);

}  // namespace snakeforge

#endif  // SNAKEFORGE_CORE_POWER_HPP_
