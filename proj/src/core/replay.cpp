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

#include "core/replay.hpp"

#include <istream>
#include <ostream>

#include "core/error.hpp"

namespace snakeforge::service
{

Recorder::Recorder(std::ostream & out, double tick_rate_hz, const InitialState & initial)
: out_(out)
{
  const Json header{
    {"type", "log_header"},
    {"version", kProtocolVersion},
    {"tick_rate_hz", tick_rate_hz},
    {"initial",
      {{"depth_m", initial.depth_m}, {"velocity_m_s", initial.velocity_m_s}, {"fill_front", initial.fill[0]},
        {"fill_rear", initial.fill[1]}}},
  };
  out_ << header.dump() << '\n';
}

void Recorder::attach(Session & session)
{
  session.set_apply_observer([this](long tick, const Json & message) {command(tick, message);});
}

void Recorder::command(long tick, const Json & message)
{
  const Json line{{"type", "command_log"}, {"tick", tick}, {"command", message}};
  std::lock_guard lock(mutex_);
  out_ << line.dump() << '\n';
}

void Recorder::telemetry(const std::string & serialized_record)
{
  std::lock_guard lock(mutex_);
  out_ << serialized_record << '\n';
  out_.flush();
}

ReplayLog read_log(std::istream & in)
{
  ReplayLog log;
  bool have_header = false;
  std::string line;
  for (long n = 1; std::getline(in, line); ++n) {
    if (line.empty()) {
      continue;
    }
    const auto where = "log line " + std::to_string(n) + ": ";
    Json j;
    try {
      j = Json::parse(line);
    } catch (const Json::parse_error & e) {
      throw Error(ErrorCode::kParse, where + e.what());
    }
    const std::string type = j.value("type", "");
    try {
      if (type == "log_header") {
        require(j.at("version") == kProtocolVersion, ErrorCode::kParse, where + "unsupported log version");
        log.tick_rate_hz = j.at("tick_rate_hz").get<double>();
        const auto & init = j.at("initial");
        log.initial.depth_m = init.at("depth_m").get<double>();
        log.initial.velocity_m_s = init.at("velocity_m_s").get<double>();
        log.initial.fill = {init.at("fill_front").get<double>(), init.at("fill_rear").get<double>()};
        have_header = true;
      } else if (type == "command_log") {
        log.commands.emplace_back(j.at("tick").get<long>(), j.at("command"));
      } else if (type == "telemetry") {
        log.telemetry.push_back(line);
      } else {
        throw Error(ErrorCode::kParse, where + "unknown record type '" + type + "'");
      }
    } catch (const Json::exception & e) {
      throw Error(ErrorCode::kParse, where + e.what());
    }
  }
  require(have_header, ErrorCode::kParse, "log has no header line");
  return log;
}

ReplayResult replay(const AssemblyPtr & assembly, const ReplayLog & log)
{
  Session session(assembly, log.tick_rate_hz, log.initial);
  ReplayResult result;
  std::size_t next = 0;
  for (std::size_t k = 0; k < log.telemetry.size(); ++k) {
    while (next < log.commands.size() && log.commands[next].first <= static_cast<long>(k)) {
      session.submit(log.commands[next].second);
      ++next;
    }
    result.telemetry.push_back(serialize(session.tick()));
    if (result.telemetry.back() != log.telemetry[k]) {
      if (result.mismatches++ == 0) {
        result.first_mismatch = static_cast<long>(k);
      }
    }
  }
  return result;
}

}  // namespace snakeforge::service
