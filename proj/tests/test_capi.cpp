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

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include "json.hpp"
#include "snakeforge/snakeforge.h"

namespace
{

using Json = nlohmann::json;

std::string manifest_path() {return std::string(SNAKEFORGE_TEST_DATA_DIR) + "/arcsnake_v2.yaml";}

Json take(char * text)
{
  Json j = Json::parse(text);
  sf_string_free(text);
  return j;
}

class CApi : public ::testing::Test
{
protected:
  void SetUp() override {ASSERT_EQ(sf_assembly_load_file(manifest_path().c_str(), &assembly_), SF_OK);}
  void TearDown() override {sf_assembly_free(assembly_);}
  sf_assembly * assembly_ = nullptr;
};

TEST_F(CApi, StatusNamesMirrorCodes)
{
  EXPECT_STREQ(sf_status_name(SF_OK), "ok");
  EXPECT_STREQ(sf_status_name(SF_ERR_PROTOCOL), "protocol");
  EXPECT_EQ(sf_protocol_version(), 1);
  EXPECT_NE(std::string(sf_version()), "");
}

TEST_F(CApi, MissingFileIsIoError)
{
  sf_assembly * a = nullptr;
  EXPECT_EQ(sf_assembly_load_file("/nonexistent/robot.yaml", &a), SF_ERR_IO);
  EXPECT_EQ(a, nullptr);
  EXPECT_NE(std::string(sf_last_error()).find("robot.yaml"), std::string::npos);
}

TEST_F(CApi, InvalidManifestIsValidationError)
{
  sf_assembly * a = nullptr;
  EXPECT_EQ(sf_assembly_load_string("segments: []\n", &a), SF_ERR_VALIDATION);
  EXPECT_EQ(sf_assembly_load_string("segments: [\n", &a), SF_ERR_PARSE);
}

TEST_F(CApi, NullArgumentsRejected)
{
  EXPECT_EQ(sf_buoyancy_report(nullptr, 1.0, 1.0, nullptr), SF_ERR_INVALID_ARGUMENT);
  EXPECT_EQ(sf_torus_volume(0.16, 0.06, nullptr), SF_ERR_INVALID_ARGUMENT);
  EXPECT_EQ(sf_session_tick(nullptr, nullptr), SF_ERR_INVALID_ARGUMENT);
}

TEST_F(CApi, GeometryHelpers)
{
  double v = 0.0;
  ASSERT_EQ(sf_torus_volume(0.16, 0.0602, &v), SF_OK);
  EXPECT_NEAR(v, 0.001431, 5e-7);
  double outer = 0.0;
  double inner = 0.0;
  ASSERT_EQ(sf_flat_pattern(0.16, 0.0602, &outer, &inner), SF_OK);
  double major = 0.0;
  double minor = 0.0;
  ASSERT_EQ(sf_torus_from_pattern(outer, inner, &major, &minor), SF_OK);
  EXPECT_NEAR(major, 0.16, 1e-15);
  EXPECT_NEAR(minor, 0.0602, 1e-15);
  EXPECT_EQ(sf_flat_pattern(0.16, 0.32 / 3.141592653589793, &outer, &inner), SF_ERR_INFEASIBLE);
}

TEST_F(CApi, QuantityParsing)
{
  double si = 0.0;
  ASSERT_EQ(sf_parse_quantity("6 psi", "pressure", &si), SF_OK);
  EXPECT_NEAR(si, 41368.5, 0.05);
  EXPECT_EQ(sf_parse_quantity("6 kg", "pressure", &si), SF_ERR_VALIDATION);
  EXPECT_EQ(sf_parse_quantity("6 psi", "colour", &si), SF_ERR_INVALID_ARGUMENT);
}

TEST_F(CApi, BuoyancyReportJson)
{
  char * text = nullptr;
  ASSERT_EQ(sf_buoyancy_report(assembly_, 0.0, 0.0, &text), SF_OK);
  const auto doc = take(text);
  EXPECT_NEAR(doc["total"]["net_n"].get<double>(), -55.38, 0.01);
  EXPECT_EQ(doc["total"]["class"], "sinks");
  EXPECT_EQ(doc["warnings"].size(), 1u);
}

TEST_F(CApi, PneumaticsAndComms)
{
  char * text = nullptr;
  ASSERT_EQ(sf_pneumatic_fill(assembly_, SF_BRANCH_REAR, -1.0, 0.01, 0.0, &text), SF_OK);
  EXPECT_NEAR(take(text)["fill_time_s"].get<double>(), 68.0, 2.0);
  double l = 0.0;
  ASSERT_EQ(sf_round_trip_latency(assembly_, 10, &l), SF_OK);
  EXPECT_DOUBLE_EQ(l, 8.92e-3);
  ASSERT_EQ(sf_comms_simulate(assembly_, R"({"streams":[{"node":3,"rate_hz":50}],"duration_s":1})", &text), SF_OK);
  EXPECT_EQ(take(text)["stats"][0]["frames"], 50);
  EXPECT_EQ(sf_comms_simulate(assembly_, "{not json", &text), SF_ERR_PARSE);
}

TEST_F(CApi, SessionRecordAndReplay)
{
  const std::string log = ::testing::TempDir() + "capi_session.jsonl";
  sf_session * s = nullptr;
  ASSERT_EQ(sf_session_create(assembly_, 20.0, R"({"depth_m":0.4})", &s), SF_OK);
  ASSERT_EQ(sf_session_record(s, log.c_str()), SF_OK);
  EXPECT_EQ(sf_session_submit(s, "{oops"), SF_ERR_PROTOCOL);
  EXPECT_EQ(sf_session_submit(s, R"({"type":"command","action":"screw","speed_rad_s":80})"), SF_ERR_OUT_OF_RANGE);
  ASSERT_EQ(sf_session_submit(s, R"({"type":"command","action":"valve","branch":"both","open":true})"), SF_OK);
  for (int k = 0; k < 30; ++k) {
    char * rec = nullptr;
    ASSERT_EQ(sf_session_tick(s, &rec), SF_OK);
    const auto j = take(rec);
    EXPECT_EQ(j["tick"], k + 1);
  }
  EXPECT_EQ(sf_session_record(s, log.c_str()), SF_ERR_INVALID_ARGUMENT);
  sf_session_free(s);

  char * text = nullptr;
  ASSERT_EQ(sf_replay_file(assembly_, log.c_str(), &text), SF_OK);
  const auto r = take(text);
  EXPECT_TRUE(r["identical"].get<bool>());
  EXPECT_EQ(r["records"], 30);
  EXPECT_EQ(r["commands"], 1);
  std::remove(log.c_str());
}

}  // namespace
