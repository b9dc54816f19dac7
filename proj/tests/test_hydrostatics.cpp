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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "core/error.hpp"
#include "core/hydrostatics.hpp"
#include "support.hpp"

namespace snakeforge::hydro
{
namespace
{

using test::stock;
constexpr double kPi = std::numbers::pi;

// Independent evaluations: rho g V - m g with rho = 1000, g = 9.81.
double hand_net(double m, double v) {return 1000.0 * 9.81 * v - 9.81 * m;}
double hand_torus(double r, double big_r) {return 2.0 * kPi * kPi * r * r * big_r;}

TEST(Buoyancy, ForceFromVolume)
{
  EXPECT_NEAR(buoyant_force(0.00143), 14.03, 0.005);
  EXPECT_DOUBLE_EQ(buoyant_force(0.0), 0.0);
  EXPECT_NEAR(buoyant_force(0.004), 39.24, 1e-9);
  EXPECT_THROW(buoyant_force(-1.0), Error);
  EXPECT_THROW(buoyant_force(1.0, 0.0), Error);
}

TEST(Buoyancy, TableRows)
{
  EXPECT_NEAR(net_vertical_force(5.386, 0.00339), -19.58, 0.005);
  EXPECT_NEAR(net_vertical_force(4.486 + 0.796, 0.00318), -20.62, 0.005);
  EXPECT_NEAR(net_vertical_force(1.164, 0.00208), hand_net(1.164, 0.00208), 1e-12);
  EXPECT_NEAR(net_vertical_force(0.544, 0.00092), 3.69, 0.005);
}

TEST(Buoyancy, Classification)
{
  EXPECT_EQ(classify(-1.0), Classification::kSinks);
  EXPECT_EQ(classify(1.0), Classification::kFloats);
  EXPECT_EQ(classify(0.0), Classification::kNeutral);
  EXPECT_EQ(classify(kNeutralBandN * 0.5), Classification::kNeutral);
}

TEST(Torus, VolumeOracle)
{
  EXPECT_NEAR(torus_volume(0.0602, 0.16), 0.001431, 5e-7);
  EXPECT_DOUBLE_EQ(torus_volume(0.0, 0.16), 0.0);
  EXPECT_NEAR(torus_volume(0.0602, 0.32), 2.0 * torus_volume(0.0602, 0.16), 1e-15);
  EXPECT_NEAR(torus_volume(0.1204, 0.32), 8.0 * torus_volume(0.0602, 0.16), 1e-15);
}

TEST(Torus, SolveGeometry)
{
  const double minor = solve_bladder_geometry(0.00143, 0.16);
  EXPECT_NEAR(minor, 2.0 * std::sqrt(0.00143 / (2.0 * kPi * kPi * 0.08)), 1e-12);
  EXPECT_NEAR(minor, 0.0602, 1e-4);
  EXPECT_DOUBLE_EQ(solve_bladder_geometry(0.0, 0.16), 0.0);
  try {
    solve_bladder_geometry(hand_torus(0.09, 0.08), 0.16);
    FAIL();
  } catch (const Error & e) {
    EXPECT_EQ(e.code(), ErrorCode::kInfeasible);
  }
}

TEST(FlatPattern, HandValues)
{
  const auto p = flat_pattern(0.16, 0.0602);
  EXPECT_NEAR(p.outer_textile_diameter_m, 0.2546, 5e-5);
  EXPECT_NEAR(p.inner_textile_diameter_m, 0.0654, 5e-5);
  const auto flat = flat_pattern(0.16, 0.0);
  EXPECT_DOUBLE_EQ(flat.outer_textile_diameter_m, 0.16);
  EXPECT_DOUBLE_EQ(flat.inner_textile_diameter_m, 0.16);
  const auto seamed = flat_pattern(0.16, 0.0602, 0.005);
  EXPECT_NEAR(seamed.cut_outer_diameter_m() - seamed.outer_textile_diameter_m, 0.01, 1e-15);
}

TEST(FlatPattern, RoundTripRandomGeometries)
{
  std::mt19937_64 rng(20260101);
  std::uniform_real_distribution<double> major(0.01, 2.0);
  std::uniform_real_distribution<double> fraction(0.0, 0.999);
  double worst = 0.0;
  for (int k = 0; k < 10000; ++k) {
    const double big = major(rng);
    const double minor = fraction(rng) * big * 2.0 / kPi;
    const auto back = torus_from_pattern(flat_pattern(big, minor));
    // Both diameters are recovered from the ring's outer and inner edges, so
    // errors are measured against the pattern's own scale.
    worst = std::max(worst, std::abs(back.major_diameter_m - big) / big);
    worst = std::max(worst, std::abs(back.minor_diameter_m - minor) / big);
  }
  EXPECT_LE(worst, 1e-12);
}

TEST(FlatPattern, BoundaryRejected)
{
  for (double big : {0.05, 0.16, 1.0, 3.7}) {
    const double minor = big * 2.0 / kPi;
    try {
      flat_pattern(big, minor);
      FAIL() << big;
    } catch (const Error & e) {
      EXPECT_EQ(e.code(), ErrorCode::kInfeasible);
    }
    EXPECT_NO_THROW(flat_pattern(big, minor * (1.0 - 1e-9)));
  }
}

TEST(Sizing, MiddleSegmentChain)
{
  const std::vector<BuoyancyReportRow> rows{make_row("middle", 5.386, 0.00339), make_row("marine", 1.164, 0.00208)};
  const double deficit = -(hand_net(5.386, 0.00339) + hand_net(1.164, 0.00208));
  const double setpoint = deficit + 0.05 * 1000.0 * 9.81 * (0.00339 + 0.00208);
  const auto s = size_bladder(rows, 0.02);
  EXPECT_NEAR(s.deficit_n, deficit, 1e-12);
  EXPECT_NEAR(s.deficit_n, 10.59, 0.01);
  EXPECT_NEAR(s.margin_basis_volume_m3, 0.00547, 1e-12);
  EXPECT_NEAR(s.setpoint_n, setpoint, 1e-12);
  EXPECT_NEAR(s.buffered_n, setpoint * 1.05, 1e-12);
  EXPECT_NEAR(s.bladder_volume_m3, (setpoint * 1.05 + 0.02 * 9.81) / 9810.0, 1e-15);
}

TEST(Sizing, NeutralSegmentNeedsNothing)
{
  const std::vector<BuoyancyReportRow> rows{make_row("neutral", 1.0, 0.001)};
  EXPECT_NEAR(required_bladder_force(rows, 0.0), 0.0, 1e-12);
}

TEST(Report, WholeRobotSinksEmptyFloatsFull)
{
  const auto & a = *stock();
  const auto empty = assembly_buoyancy_report(a, {0.0, 0.0});
  const auto full = assembly_buoyancy_report(a, {1.0, 1.0});
  EXPECT_EQ(empty.classification, Classification::kSinks);
  EXPECT_EQ(full.classification, Classification::kFloats);
  const double bladder = hand_net(0.02, hand_torus(0.0301, 0.08));
  EXPECT_NEAR(full.total_net_force_n - empty.total_net_force_n, 6.0 * (bladder + 0.02 * 9.81), 1e-9);

  // Deflated total from hand-evaluated rows.
  double expected = 0.0;
  expected += hand_net(5.006 + 1.009, 0.004) + hand_net(0.544, 0.00092);
  expected += 2.0 * (hand_net(5.386, 0.00339) + hand_net(1.164, 0.00208));
  expected += hand_net(4.486 + 0.796, 0.00318) + hand_net(0.544, 0.00092);
  expected -= 6.0 * 0.02 * 9.81;
  EXPECT_NEAR(empty.total_net_force_n, expected, 1e-9);
  EXPECT_NEAR(assembly_net_force(a, {0.3, 0.8}), assembly_buoyancy_report(a, {0.3, 0.8}).total_net_force_n, 1e-9);
}

TEST(Report, TableCrossCheckFlagsOnlyFront)
{
  const auto report = assembly_buoyancy_report(*stock(), {1.0, 1.0});
  const auto warnings = reference_mismatches(report);
  ASSERT_EQ(warnings.size(), 1u);
  EXPECT_NE(warnings[0].find("front"), std::string::npos);
}

TEST(Report, EmptyAssembly)
{
  RobotAssembly empty;
  const auto report = assembly_buoyancy_report(empty, {0.0, 0.0});
  EXPECT_TRUE(report.rows.empty());
  EXPECT_DOUBLE_EQ(report.total_net_force_n, 0.0);
}

TEST(Report, TiltMomentSignFollowsDifferentialFill)
{
  const auto & a = *stock();
  EXPECT_GT(static_tilt_moment(a, {1.0, 0.0}), static_tilt_moment(a, {0.0, 1.0}));
}

TEST(Report, RejectsFillOutsideUnitRange)
{
  EXPECT_THROW(assembly_buoyancy_report(*stock(), {1.1, 0.0}), Error);
}

}  // namespace
}  // namespace snakeforge::hydro
