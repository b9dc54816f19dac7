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
#include "core/kinematics.hpp"
#include "support.hpp"

namespace snakeforge::kinematics
{
namespace
{

using test::stock;
constexpr double kPi = std::numbers::pi;
double deg(double d) {return d * kPi / 180.0;}

TEST(ForwardKinematics, StraightChain)
{
  const std::vector<JointAngles> joints(3);
  const auto frames = forward_kinematics(joints, 0.441);
  ASSERT_EQ(frames.size(), 5u);
  EXPECT_NEAR(frames.back().position.x(), 1.764, 1e-12);
  EXPECT_NEAR(frames.back().position.y(), 0.0, 1e-12);
  EXPECT_NEAR(frames.back().position.z(), 0.0, 1e-12);
}

TEST(ForwardKinematics, QuarterPitchIsPerpendicular)
{
  const std::vector<JointAngles> joints{{kPi / 2.0, 0.0}};
  const auto f = forward_kinematics(joints, 0.441);
  const Eigen::Vector3d first = f[1].position - f[0].position;
  const Eigen::Vector3d second = f[2].position - f[1].position;
  EXPECT_NEAR(first.dot(second), 0.0, 1e-12);
  EXPECT_NEAR(second.norm(), 0.441, 1e-12);
}

TEST(ForwardKinematics, EqualYawPutsMidpointsOnCircle)
{
  for (double theta : {deg(10.0), deg(30.0), deg(60.0)}) {
    const std::vector<JointAngles> joints(5, JointAngles{0.0, theta});
    const auto mids = segment_midpoints(forward_kinematics(joints, 0.441));
    // Circumcentre of the first three midpoints in the plane.
    const Eigen::Vector2d a = mids[0].head<2>();
    const Eigen::Vector2d b = mids[1].head<2>();
    const Eigen::Vector2d c = mids[2].head<2>();
    const double d = 2.0 * (a.x() * (b.y() - c.y()) + b.x() * (c.y() - a.y()) + c.x() * (a.y() - b.y()));
    const Eigen::Vector2d centre(
      (a.squaredNorm() * (b.y() - c.y()) + b.squaredNorm() * (c.y() - a.y()) + c.squaredNorm() * (a.y() - b.y())) / d,
      (a.squaredNorm() * (c.x() - b.x()) + b.squaredNorm() * (a.x() - c.x()) + c.squaredNorm() * (b.x() - a.x())) / d);
    const double radius = 0.441 / (2.0 * std::tan(theta / 2.0));
    for (const auto & m : mids) {
      EXPECT_NEAR((m.head<2>() - centre).norm(), radius, 1e-9);
      EXPECT_NEAR(m.z(), 0.0, 1e-12);
    }
  }
}

TEST(ForwardKinematics, PreservesChainLength)
{
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> angle(-kPi / 2.0, kPi / 2.0);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<JointAngles> joints(6);
    for (auto & j : joints) {
      j = {angle(rng), angle(rng)};
    }
    const auto f = forward_kinematics(joints, 0.441);
    double length = 0.0;
    for (std::size_t i = 1; i < f.size(); ++i) {
      length += (f[i].position - f[i - 1].position).norm();
    }
    EXPECT_NEAR(length, 7 * 0.441, 1e-12);
  }
}

TEST(Screwing, ArcRadiusInverse)
{
  EXPECT_NEAR(arc_radius_for_angle(deg(30.0), 0.441), 0.441 / (2.0 * std::tan(deg(15.0))), 1e-12);
  EXPECT_NEAR(arc_radius_for_angle(deg(30.0), 0.441), 0.823, 5e-4);
  const auto cmd = gait_screwing(arc_radius_for_angle(deg(30.0), 0.441), 5.0, *stock());
  for (const auto & j : cmd.joints) {
    EXPECT_NEAR(j.yaw_rad, deg(30.0), 1e-12);
    EXPECT_DOUBLE_EQ(j.pitch_rad, 0.0);
  }
}

TEST(Screwing, StraightAndInfeasible)
{
  const auto straight = gait_screwing(std::numeric_limits<double>::infinity(), 5.0, *stock());
  for (const auto & j : straight.joints) {
    EXPECT_DOUBLE_EQ(j.yaw_rad, 0.0);
  }
  const double tightest = 0.441 / (2.0 * std::tan(deg(90.0) / 2.0));
  try {
    gait_screwing(tightest * 0.99, 5.0, *stock());
    FAIL();
  } catch (const Error & e) {
    EXPECT_EQ(e.code(), ErrorCode::kInfeasible);
  }
  EXPECT_NO_THROW(gait_screwing(tightest * 1.01, 5.0, *stock()));
}

TEST(Sidewinding, ZeroAmplitudeIsStill)
{
  SidewindingParams p;
  p.frequency_hz = 0.7;
  p.phase_lag_rad = 1.0;
  for (double t : {0.0, 0.3, 1.7}) {
    for (const auto & j : gait_sidewinding(p, t, 3, stock()->joint).joints) {
      EXPECT_DOUBLE_EQ(j.pitch_rad, 0.0);
      EXPECT_DOUBLE_EQ(j.yaw_rad, 0.0);
    }
  }
}

TEST(Sidewinding, Periodic)
{
  const SidewindingParams p{deg(20.0), deg(30.0), 0.4, kPi / 4.0, 0.0};
  const auto a = gait_sidewinding(p, 0.37, 3, stock()->joint);
  const auto b = gait_sidewinding(p, 0.37 + 1.0 / 0.4, 3, stock()->joint);
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_NEAR(a.joints[i].pitch_rad, b.joints[i].pitch_rad, 1e-12);
    EXPECT_NEAR(a.joints[i].yaw_rad, b.joints[i].yaw_rad, 1e-12);
  }
}

TEST(Sidewinding, WaveformReference)
{
  const SidewindingParams p{deg(30.0), deg(10.0), 0.5, kPi / 3.0, 0.0};
  const auto cmd = gait_sidewinding(p, 0.0, 3, stock()->joint);
  EXPECT_NEAR(cmd.joints[0].pitch_rad, 0.0, 1e-12);
  EXPECT_NEAR(cmd.joints[1].pitch_rad * 180.0 / kPi, 25.98, 0.005);
  EXPECT_NEAR(cmd.joints[2].pitch_rad * 180.0 / kPi, 25.98, 0.005);
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_NEAR(cmd.joints[i].yaw_rad, deg(10.0) * std::cos(static_cast<double>(i) * kPi / 3.0), 1e-12);
  }
}

TEST(Sidewinding, AmplitudeOverLimitRejected)
{
  const SidewindingParams p{deg(120.0), 0.0, 0.5, 0.0, 0.0};
  EXPECT_THROW(gait_sidewinding(p, 0.0, 3, stock()->joint), Error);
}

TEST(Wheeling, ScrewSpeedFromGroundSpeed)
{
  const auto & d = stock()->drivetrain;
  for (double s : gait_wheeling(0.0, d, 3, 4).screw_speeds_rad_s) {
    EXPECT_DOUBLE_EQ(s, 0.0);
  }
  for (double s : gait_wheeling(0.9, d, 3, 4).screw_speeds_rad_s) {
    EXPECT_NEAR(s, 10.0, 1e-12);
  }
  EXPECT_THROW(gait_wheeling(10.0, d, 3, 4), Error);
}

TEST(Play, SaturatedRampTrailsByHalfWidth)
{
  PlayOperator play;
  const double w = deg(4.0);
  for (int k = 1; k <= 100; ++k) {
    const double cmd = 0.01 * k;
    const double out = play.apply(cmd, w);
    if (cmd > w / 2.0) {
      EXPECT_DOUBLE_EQ(out, cmd - w / 2.0);
    } else {
      EXPECT_DOUBLE_EQ(out, 0.0);
    }
  }
  // Reversal inside the band holds the output.
  const double held = play.output();
  EXPECT_DOUBLE_EQ(play.apply(1.0 - w / 2.0, w), held);
}

TEST(Hysteresis, WidthsAtMeasuredLoads)
{
  const HysteresisModel model;
  const double lb = units::kPoundToKg;
  const std::array<std::pair<double, double>, 3> cases{{{0.0, 1.94}, {6.25, 4.15}, {11.25, 5.92}}};
  for (const auto & [load_lb, width_deg] : cases) {
    const auto sweep = hysteresis_sweep(load_lb * lb, model, deg(30.0));
    const double w = measure_loop_width(sweep) * 180.0 / kPi;
    EXPECT_NEAR(w, width_deg, 0.01) << load_lb;
    EXPECT_NEAR(w, 1.94 + 0.354 * load_lb, 1e-3);
  }
}

TEST(Hysteresis, LoopAreaMatchesParallelogram)
{
  // Under a saturating sweep the loop is bounded by two shifted copies of the
  // command, so its area is w times the command span.
  const HysteresisModel model;
  const double w = model.width_rad(2.0);
  const double a = deg(30.0);
  const auto sweep = hysteresis_sweep(2.0, model, a, 3, 3600);
  EXPECT_NEAR(measure_loop_area(sweep, 3600), 2.0 * a * w - w * w, 2e-3 * 2.0 * a * w);
}

TEST(Hysteresis, FitRecoversLine)
{
  const std::vector<std::pair<double, double>> pts{{0.0, 0.02}, {1.0, 0.03}, {3.0, 0.05}};
  const auto m = fit_hysteresis(pts);
  EXPECT_NEAR(m.width_intercept_rad, 0.02, 1e-12);
  EXPECT_NEAR(m.width_slope_rad_per_kg, 0.01, 1e-12);
}

TEST(Drivetrain, MeasuredCurve)
{
  const auto & d = stock()->drivetrain;
  EXPECT_NEAR(screw_output(1.5, 10.0, d).shell_torque_nm, 3.60, 1e-12);
  EXPECT_NEAR(screw_output(1.5, 50.0, d).shell_torque_nm, 75.9 * 0.09, 1e-12);
  EXPECT_NEAR(screw_output(1.5, 30.0, d).tangential_force_n, 57.95, 1e-12);
  EXPECT_DOUBLE_EQ(screw_output(1.5, 50.0, d).ideal_torque_nm, 10.5);
  EXPECT_NEAR(screw_output(1.5, 50.0, d).efficiency, 75.9 * 0.09 / 10.5, 1e-12);
  EXPECT_TRUE(screw_output(1.5, 5.0, d).extrapolated);
  EXPECT_THROW(screw_output(1.5, 60.0, d), Error);
  EXPECT_TRUE(screw_output(2.0, 30.0, d).torque_limited);
}

}  // namespace
}  // namespace snakeforge::kinematics
