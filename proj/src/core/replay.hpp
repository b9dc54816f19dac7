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


#ifndef SNAKEFORGE_CORE_REPLAY_HPP_
#define SNAKEFORGE_CORE_REPLAY_HPP_

#include <iosfwd>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "core/session.hpp"

namespace snakeforge::service
{

// JSON Lines log: a header, then commands ({type:"command_log", tick, command})
// and telemetry records in the order they happened.
class Recorder
{
public:
  Recorder(std::ostream & out, double tick_rate_hz, const InitialState & initial);

  // Routes the session's applied commands into the log.
  void attach(Session & session);
  void command(long tick, const Json & message);
  void telemetry(const std::string & serialized_record);

private:
  std::mutex mutex_;
  std::ostream & out_;
};

struct ReplayLog
{
  double tick_rate_hz = 0.0;
  InitialState initial;
  std::vector<std::pair<long, Json>> commands;  // in application order
  std::vector<std::string> telemetry;            // serialized records as written
};

// Throws Error(kParse) on malformed lines.
ReplayLog read_log(std::istream & in);

struct ReplayResult
{
  std::vector<std::string> telemetry;
  std::size_t mismatches = 0;
  long first_mismatch = -1;  // index into telemetry, -1 when identical
  bool identical() const {return mismatches == 0;}
};

// Re-runs the logged commands headless for as many ticks as were recorded and
// compares each serialized record byte for byte.
ReplayResult replay(const AssemblyPtr & assembly, const ReplayLog & log);

}  // namespace snakeforge::service

#endif  // SNAKEFORGE_CORE_REPLAY_HPP_
