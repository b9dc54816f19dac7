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

#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "core/error.hpp"
#include "core/pneumatics.hpp"
#include "core/replay.hpp"
#include "core/scenario.hpp"
#include "core/session.hpp"
#include "support.hpp"

namespace snakeforge::service
{
namespace
{

using test::stock;

Json command(const std::string & action, Json fields = Json::object())
{
  Json msg{{"type", "command"}, {"action", action}};
  for (auto & [k, v] : fields.items()) {
    msg[k] = v;
  }
  return msg;
}

ErrorCode code_of(const Json & msg)
{
  try {
    parse_command(msg, *stock());
  } catch (const Error & e) {
    return e.code();
  }
  return ErrorCode::kInternal;
}

TEST(Protocol, HelloAndError)
{
  EXPECT_EQ(hello_message().dump(), R"({"type":"hello","version":1})");
  const auto err = error_message(ErrorCode::kProtocol, "bad");
  EXPECT_EQ(err["type"], "error");
  EXPECT_EQ(err["code"], "protocol");
  EXPECT_EQ(err["message"], "bad");
}

TEST(Protocol, RejectsMalformedMessages)
{
  EXPECT_EQ(code_of(Json::array()), ErrorCode::kProtocol);
  EXPECT_EQ(code_of({{"type", "valve"}}), ErrorCode::kProtocol);
  EXPECT_EQ(code_of({{"type", "command"}}), ErrorCode::kProtocol);
  EXPECT_EQ(code_of(command("fly")), ErrorCode::kProtocol);
  EXPECT_EQ(code_of(command("valve", {{"branch", "rear"}, {"open", true}, {"colour", "red"}})), ErrorCode::kProtocol);
  EXPECT_EQ(code_of(command("valve", {{"branch", "middle"}, {"open", true}})), ErrorCode::kProtocol);
  EXPECT_EQ(code_of(command("valve", {{"branch", "rear"}})), ErrorCode::kProtocol);
  EXPECT_EQ(code_of(command("valve", {{"branch", "rear"}, {"open", true}, {"mode", "vent"}})), ErrorCode::kProtocol);
  EXPECT_EQ(code_of(command("valve", {{"branch", "rear"}, {"open", "yes"}})), ErrorCode::kProtocol);
  EXPECT_EQ(code_of(command("screw")), ErrorCode::kProtocol);
  EXPECT_EQ(code_of(command("reset", {{"now", true}})), ErrorCode::kProtocol);
}

TEST(Protocol, RangeChecks)
{
  EXPECT_EQ(code_of(command("screw", {{"speed_rad_s", 51.0}})), ErrorCode::kOutOfRange);
  EXPECT_EQ(
    code_of(command("valve", {{"branch", "front"}, {"open", true}, {"upstream_pa", 2.0e5}})), ErrorCode::kOutOfRange);
  EXPECT_EQ(
    code_of(command("gait", {{"mode", "sidewinding"}, {"pitch_amplitude_rad", 2.0}})), ErrorCode::kOutOfRange);
  EXPECT_EQ(code_of(command("gait", {{"mode", "screwing"}, {"turn_radius_m", 0.1}})), ErrorCode::kInfeasible);
  EXPECT_NO_THROW(parse_command(command("screw", {{"speed_rad_s", -50.0}}), *stock()));
}

TEST(Session, DefaultRobotSinks)
{
  Session s(stock(), 20.0);
  Telemetry last;
  for (int k = 0; k < 40; ++k) {
    last = s.tick();
  }
  EXPECT_GT(last.depth_m, 0.0);
  EXPECT_GT(last.velocity_m_s, 0.0);
  EXPECT_EQ(last.tick, 40);
  EXPECT_DOUBLE_EQ(last.t_s, 2.0);
}

TEST(Session, ValveOpenMatchesHeadlessComposition)
{
  Session s(stock(), 20.0);
  s.submit(command("valve", {{"branch", "rear"}, {"open", true}}));

  const auto rear = pneumatics::BranchModel::from_assembly(*stock(), Branch::kRear);
  const auto body = dynamics::VerticalBody::from_assembly(*stock());
  const double up = stock()->pneumatics.regulator_gauge_pa;
  double volume = 0.0;
  dynamics::VerticalState state;
  for (int k = 0; k < 200; ++k) {
    const auto rec = s.tick();
    for (int sub = 0; sub < 5; ++sub) {
      volume = rear.advance(volume, pneumatics::ValveMode::kInflate, up, 0.01);
      state = dynamics::step(body, {0.0, volume / rear.full_volume_m3}, state, 0.01);
    }
    ASSERT_EQ(rec.fill[1], volume / rear.full_volume_m3) << k;
    ASSERT_EQ(rec.fill[0], 0.0);
    ASSERT_EQ(rec.depth_m, state.depth_m) << k;
    ASSERT_EQ(rec.velocity_m_s, state.velocity_m_s) << k;
  }
}

TEST(Session, CommandsApplyAtTickBoundary)
{
  Session s(stock(), 10.0);
  s.submit(command("gait", {{"mode", "wheeling"}, {"ground_speed_m_s", 0.9}}));
  EXPECT_EQ(s.snapshot().gait, kinematics::GaitMode::kIdle);
  const auto rec = s.tick();
  EXPECT_EQ(rec.gait, kinematics::GaitMode::kWheeling);
  for (double w : rec.screw_speeds_rad_s) {
    EXPECT_NEAR(w, 10.0, 1e-12);
  }
}

TEST(Session, InvalidSubmitLeavesSessionUnchanged)
{
  Session s(stock(), 10.0);
  EXPECT_THROW(s.submit(command("screw", {{"speed_rad_s", 99.0}})), Error);
  Session fresh(stock(), 10.0);
  EXPECT_EQ(serialize(s.tick()), serialize(fresh.tick()));
}

TEST(Session, ResetRestoresInitialState)
{
  InitialState init;
  init.depth_m = 0.5;
  Session s(stock(), 20.0, init);
  s.submit(command("valve", {{"branch", "both"}, {"open", true}}));
  s.submit(command("screw", {{"speed_rad_s", 20.0}}));
  for (int k = 0; k < 30; ++k) {
    s.tick();
  }
  s.submit(command("reset"));
  const auto rec = s.tick();
  Session fresh(stock(), 20.0, init);
  const auto ref = fresh.tick();
  EXPECT_EQ(rec.tick, 31);
  EXPECT_EQ(rec.depth_m, ref.depth_m);
  EXPECT_EQ(rec.fill, ref.fill);
  EXPECT_EQ(rec.valves, ref.valves);
  for (double w : rec.screw_speeds_rad_s) {
    EXPECT_EQ(w, 0.0);
  }
}

TEST(Session, ConcurrentSessionsAreIndependent)
{
  std::vector<std::string> a;
  std::vector<std::string> b;
  std::thread ta([&] {
      Session s(stock(), 50.0);
      s.submit(command("valve", {{"branch", "front"}, {"open", true}}));
      for (int k = 0; k < 300; ++k) {
        a.push_back(serialize(s.tick()));
      }
    });
  std::thread tb([&] {
      Session s(stock(), 50.0);
      for (int k = 0; k < 300; ++k) {
        b.push_back(serialize(s.tick()));
      }
    });
  ta.join();
  tb.join();
  Session ref(stock(), 50.0);
  for (int k = 0; k < 300; ++k) {
    EXPECT_EQ(b[k], serialize(ref.tick()));
  }
  EXPECT_NE(a.back(), b.back());
}

TEST(Session, JointsTrailTheGaitThroughPlay)
{
  Session s(stock(), 20.0);
  s.submit(command("gait", {{"mode", "screwing"}, {"turn_radius_m", 0.823}, {"joint_load_kg", 2.0}}));
  const auto rec = s.tick();
  const double half = 0.5 * stock()->joint.hysteresis.width_rad(2.0);
  const double target = kinematics::angle_for_arc_radius(0.823, stock()->segment_length_m);
  for (const auto & j : rec.joints) {
    EXPECT_NEAR(j.yaw_rad, target - half, 1e-12);
  }
}

TEST(Telemetry, SchemaKeysInOrder)
{
  Session s(stock(), 20.0);
  const auto j = to_json(s.tick());
  std::vector<std::string> keys;
  for (auto it = j.begin(); it != j.end(); ++it) {
    keys.push_back(it.key());
  }
  const std::vector<std::string> expected{
    "type", "tick", "t_s", "depth_m", "velocity_m_s", "acceleration_m_s2", "fill_front", "fill_rear",
    "valve_front", "valve_rear", "gait", "joints", "screw_speeds_rad_s"};
  EXPECT_EQ(keys, expected);
  EXPECT_EQ(j["joints"].size(), 3u);
  EXPECT_EQ(j["screw_speeds_rad_s"].size(), 4u);
}

TEST(Telemetry, DoublesRoundTrip)
{
  Session s(stock(), 20.0);
  s.tick();
  const auto rec = s.tick();
  const auto back = Json::parse(serialize(rec));
  EXPECT_EQ(back["depth_m"].get<double>(), rec.depth_m);
  EXPECT_EQ(back["velocity_m_s"].get<double>(), rec.velocity_m_s);
}

// A session driven with a command script, recorded to a string.
std::string record_session(int ticks)
{
  std::ostringstream log;
  InitialState init;
  init.depth_m = 0.2;
  Session s(stock(), 25.0, init);
  Recorder rec(log, 25.0, init);
  rec.attach(s);
  for (int k = 0; k < ticks; ++k) {
    if (k == 3) {
      s.submit(command("valve", {{"branch", "rear"}, {"open", true}}));
      s.submit(command("gait", {{"mode", "sidewinding"}, {"pitch_amplitude_rad", 0.3}, {"yaw_amplitude_rad", 0.4},
        {"phase_lag_rad", 0.7}, {"joint_load_kg", 1.0}}));
    }
    if (k == 40) {
      s.submit(command("valve", {{"branch", "front"}, {"mode", "vent"}}));
      s.submit(command("screw", {{"speed_rad_s", -12.5}}));
    }
    if (k == 90) {
      s.submit(command("reset"));
    }
    rec.telemetry(serialize(s.tick()));
  }
  return log.str();
}

TEST(Replay, ReproducesRecordedTelemetryBitwise)
{
  std::istringstream in(record_session(150));
  const auto log = read_log(in);
  EXPECT_EQ(log.commands.size(), 5u);
  EXPECT_EQ(log.telemetry.size(), 150u);
  EXPECT_DOUBLE_EQ(log.initial.depth_m, 0.2);
  const auto r = replay(stock(), log);
  EXPECT_TRUE(r.identical());
  EXPECT_EQ(r.telemetry, log.telemetry);
}

TEST(Replay, DetectsTampering)
{
  std::istringstream in(record_session(60));
  auto log = read_log(in);
  auto j = Json::parse(log.telemetry[17]);
  j["depth_m"] = j["depth_m"].get<double>() + 1e-15;
  log.telemetry[17] = j.dump();
  const auto r = replay(stock(), log);
  EXPECT_FALSE(r.identical());
  EXPECT_EQ(r.first_mismatch, 17);
}

TEST(Replay, MalformedLogRejected)
{
  std::istringstream in("{\"type\":\"log_header\"\nnot json\n");
  try {
    read_log(in);
    FAIL();
  } catch (const Error & e) {
    EXPECT_EQ(e.code(), ErrorCode::kParse);
  }
}

TEST(Scenario, FilesMatchBuiltIns)
{
  const auto from_file = scenario::load_scenario_file(test::data_path("scenarios/descent.yaml"));
  const auto a = scenario::run(stock(), from_file, 0.01);
  const auto b = scenario::run(stock(), scenario::descent_scenario(*stock()), 0.01);
  ASSERT_TRUE(a.summary && b.summary);
  EXPECT_EQ(a.records.size(), b.records.size());
  EXPECT_EQ(serialize(a.records.back()), serialize(b.records.back()));

  const auto up_file = scenario::load_scenario_file(test::data_path("scenarios/ascent.yaml"));
  const auto c = scenario::run(stock(), up_file, 0.01);
  const auto d = scenario::run(stock(), scenario::ascent_scenario(*stock()), 0.01);
  EXPECT_EQ(serialize(c.records.back()), serialize(d.records.back()));
  EXPECT_DOUBLE_EQ(c.summary->mean_acceleration_m_s2, d.summary->mean_acceleration_m_s2);
}

TEST(Scenario, RearFillTiltsTowardTheTail)
{
  const auto s = scenario::load_scenario_file(test::data_path("scenarios/rear_fill.yaml"));
  const auto run = scenario::run(stock(), s, 0.05);
  EXPECT_FALSE(run.summary.has_value());
  EXPECT_DOUBLE_EQ(run.records.back().t_s, 90.0);
  EXPECT_EQ(run.records.back().fill[0], 0.0);
  EXPECT_NEAR(run.records.back().fill[1], 1.0, 1e-9);
}

TEST(Scenario, LoaderReportsProblems)
{
  const char * doc =
    "name: broken\n"
    "horizon: 10 kg\n"
    "stop: sideways\n"
    "events:\n"
    "  - at: 1 s\n"
    "    action: valve\n"
    "    branch: rear\n"
    "    open: true\n";
  EXPECT_THROW(scenario::load_scenario(doc), manifest::ManifestError);
}

TEST(Scenario, BadEventFailsBeforeStepping)
{
  auto s = scenario::descent_scenario(*stock());
  s.events.push_back({1.0, command("screw", {{"speed_rad_s", 70.0}})});
  EXPECT_THROW(scenario::run(stock(), s, 0.01), Error);
}

}  // namespace
}  // namespace snakeforge::service
