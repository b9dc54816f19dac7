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


#ifndef SNAKEFORGE_CORE_SESSION_HPP_
#define SNAKEFORGE_CORE_SESSION_HPP_

#include <deque>
#include <functional>
#include <limits>
#include <mutex>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

#include "core/dynamics.hpp"
#include "core/error.hpp"
#include "core/kinematics.hpp"
#include "core/model.hpp"
#include "core/pneumatics.hpp"

namespace snakeforge::service
{

using Json = nlohmann::ordered_json;

inline constexpr int kProtocolVersion = 1;

struct ValveCommand
{
  std::vector<Branch> branches;
  pneumatics::ValveMode mode = pneumatics::ValveMode::kClosed;
  std::optional<double> upstream_pa;
};

struct GaitSettings
{
  kinematics::GaitMode mode = kinematics::GaitMode::kIdle;
  double turn_radius_m = std::numeric_limits<double>::infinity();
  double screw_speed_rad_s = 0.0;
  double ground_speed_m_s = 0.0;
  double slip = 0.0;
  kinematics::SidewindingParams sidewinding;
  double joint_load_kg = 0.0;
};

struct ScrewCommand
{
  double speed_rad_s = 0.0;
};

struct ResetCommand
{
};

using Command = std::variant<ValveCommand, GaitSettings, ScrewCommand, ResetCommand>;

// A validated command and the message it came from, kept for logs.
struct ParsedCommand
{
  Command command;
  Json message;
};

// Joint targets and screw speeds of a gait at time t.
kinematics::GaitCommand evaluate_gait(const GaitSettings & gait, const RobotAssembly & assembly, double t_s);

// Parses and validates a {type:"command", action:...} message against the
// assembly's limits. Throws Error(kProtocol) for malformed messages and the
// module's own error code for out-of-range or infeasible requests.
ParsedCommand parse_command(const Json & message, const RobotAssembly & assembly);

struct InitialState
{
  double depth_m = 0.0;
  double velocity_m_s = 0.0;
  hydro::BranchFill fill{0.0, 0.0};
};

struct Telemetry
{
  long tick = 0;
  double t_s = 0.0;
  double depth_m = 0.0;
  double velocity_m_s = 0.0;
  double acceleration_m_s2 = 0.0;
  hydro::BranchFill fill{};
  std::array<pneumatics::ValveMode, 2> valves{};
  std::vector<kinematics::JointAngles> joints;
  std::vector<double> screw_speeds_rad_s;
  kinematics::GaitMode gait = kinematics::GaitMode::kIdle;
};

Json to_json(const Telemetry & record);
// One line of compact JSON; round-trips every double.
std::string serialize(const Telemetry & record);

Json hello_message();
Json error_message(ErrorCode code, const std::string & message);

// One simulated robot. Any thread may submit commands; a single executor
// calls tick(), which applies queued commands in arrival order and then
// advances the simulation by one tick period.
class Session
{
public:
  using ApplyObserver = std::function<void (long tick, const Json & message)>;

  Session(AssemblyPtr assembly, double tick_rate_hz, InitialState initial = {});

  Session(const Session &) = delete;
  Session & operator=(const Session &) = delete;

  // Validates and queues. Throws on invalid commands; the session is unchanged.
  void submit(const Json & message);
  void submit(ParsedCommand command);

  Telemetry tick();
  // Current state without advancing.
  Telemetry snapshot() const;

  // Called from tick() for each command as it is applied.
  void set_apply_observer(ApplyObserver observer) {observer_ = std::move(observer);}

  const RobotAssembly & assembly() const {return *assembly_;}
  double tick_rate_hz() const {return tick_rate_hz_;}
  long ticks() const {return tick_;}
  const InitialState & initial_state() const {return initial_;}

private:
  void apply(const Command & command);
  void reset_physical_state();
  void update_gait(double t_s);

  AssemblyPtr assembly_;
  double tick_rate_hz_;
  int substeps_;
  InitialState initial_;
  dynamics::VerticalBody body_;
  std::array<pneumatics::BranchModel, 2> branches_;

  mutable std::mutex queue_mutex_;
  std::deque<ParsedCommand> queue_;
  ApplyObserver observer_;

  long tick_ = 0;
  dynamics::VerticalState vertical_;
  std::array<double, 2> volume_m3_{};
  std::array<pneumatics::ValveMode, 2> valves_{};
  std::array<double, 2> upstream_pa_{};
  GaitSettings gait_;
  std::optional<double> screw_override_;
  std::vector<kinematics::PlayOperator> pitch_play_;
  std::vector<kinematics::PlayOperator> yaw_play_;
  std::vector<kinematics::JointAngles> joints_;
  std::vector<double> screws_;
};

}  // namespace snakeforge::service

#endif  // SNAKEFORGE_CORE_SESSION_HPP_
