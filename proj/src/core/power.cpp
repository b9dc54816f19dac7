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

#include "core/power.hpp"

#include <cmath>

#include "core/error.hpp"

namespace snakeforge
{

PowerReport power_budget_check(const RobotAssembly & assembly, std::span<const double> per_segment_draw_w)
{
  require(
    per_segment_draw_w.size() == assembly.segments.size(), ErrorCode::kInvalidArgument,
    "expected one power draw per segment (" + std::to_string(assembly.segments.size()) + ")");
  PowerReport report;
  report.segment_limit_w = assembly.power.segment_max_w;
  report.system_limit_w = assembly.power.system_max_w;
  for (std::size_t i = 0; i < per_segment_draw_w.size(); ++i) {
    const double draw = per_segment_draw_w[i];
    require(std::isfinite(draw) && draw >= 0.0, ErrorCode::kInvalidArgument, "power draws must be non-negative");
    SegmentPower seg{i, assembly.segments[i].name, draw, draw <= report.segment_limit_w};
    report.system_w += draw;
    report.pass = report.pass && seg.pass;
    report.segments.push_back(std::move(seg));
  }
  report.system_pass = report.system_w <= report.system_limit_w;
  report.pass = report.pass && report.system_pass;
  return report;
}

}  // namespace snakeforge
