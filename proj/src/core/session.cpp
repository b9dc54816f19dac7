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

#include "core/session.hpp"

#include <cmath>
#include <set>
#include <utility>

#include "core/error.hpp"

namespace snakeforge::service
{

namespace
{

constexpr double kMaxSubstepS = 0.01;

[[noreturn]] void malformed(const std::string & message)
{
  throw Error(ErrorCode::kProtocol, message);
}

// Typed, strict access to one command message.
class Fields
{
public:
  Fields(const Json & message, std::set<std::string> allowed)
  : message_(message)
  {
    allowed.insert({"type", "action"});
    for (const auto & item : message.items()) {
      if (!allowed.count(item.key())) {
        malformed("unknown field '" + item.key() + "'");
      }
    }
  }

  bool has(const char * key) const {return message_.contains(key) && !message_.at(key).is_null();}

  std::string text(const char * key) const
  {
    if (!has(key) || !message_.at(key).is_string()) {
      malformed(std::string("field '") + key + "' must be a string");
    }
    return message_.at(key).get<std::string>();
  }

  std::optional<double> number(const char * key) const
  {
    if (!has(key)) {
      return std::nullopt;
    }
    const auto & v = message_.at(key);
    if (!v.is_number() || !std::isfinite(v.get<double>())) {
      malformed(std::string("field '") + key + "' must be a finite number");
    }
    return v.get<double>();
  }

  double number_or(const char * key, double fallback) const {return number(key).value_or(fallback);}

  std::optional<bool> flag(const char * key) const
  {
    if (!has(key)) {
      return std::nullopt;
    }
    if (!message_.at(key).is_boolean()) {
      malformed(std::string("field '") + key + "' must be true or false");
    }
    return message_.at(key).get<bool>();
  }

private:
  const Json & message_;
};

void check_screw_speed(double speed, const RobotAssembly & assembly)
{
  const double limit = assembly.drivetrain.max_screw_speed_rad_s;
  require(
    std::abs(speed) <= limit, ErrorCode::kOutOfRange,
    "screw speed " + std::to_string(speed) + " rad/s exceeds the " + std::to_string(limit) + " rad/s limit");
}

ValveCommand parse_valve(const Fields & f, const RobotAssembly & assembly)
{
  ValveCommand cmd;
  const std::string branch = f.text("branch");
  if (branch == "both") {
    cmd.branches = {Branch::kFront, Branch::kRear};
  } else if (auto b = parse_branch(branch)) {
    cmd.branches = {*b};
  } else {
    malformed("branch must be 'front', 'rear' or 'both'");
  }

  const auto open = f.flag("open");
  if (f.has("mode") == open.has_value()) {
    malformed("valve command needs exactly one of 'open' or 'mode'");
  }
  if (open) {
    cmd.mode = *open ? pneumatics::ValveMode::kInflate : pneumatics::ValveMode::kClosed;
  } else {
    const std::string mode = f.text("mode");
    if (mode == "inflate") {
      cmd.mode = pneumatics::ValveMode::kInflate;
    } else if (mode == "vent") {
      cmd.mode = pneumatics::ValveMode::kVent;
    } else if (mode == "closed") {
      cmd.mode = pneumatics::ValveMode::kClosed;
    } else {
      malformed("valve mode must be 'inflate', 'vent' or 'closed'");
    }
  }

  if ((cmd.upstream_pa = f.number("upstream_pa"))) {
    const double limit = assembly.pneumatics.compressor_limit_gauge_pa;
    require(
      *cmd.upstream_pa >= 0.0 && *cmd.upstream_pa <= limit, ErrorCode::kOutOfRange,
      "upstream pressure must be within 0.." + std::to_string(limit) + " Pa gauge");
  }
  return cmd;
}

}  // namespace

kinematics::GaitCommand evaluate_gait(const GaitSettings & g, const RobotAssembly & assembly, double t_s)
{
  const std::size_t joints = assembly.joint_count();
  const std::size_t screws = assembly.segments.size();
  switch (g.mode) {
    case kinematics::GaitMode::kScrewing:
      return kinematics::gait_screwing(g.turn_radius_m, g.screw_speed_rad_s, assembly);
    case kinematics::GaitMode::kWheeling:
      return kinematics::gait_wheeling(g.ground_speed_m_s, assembly.drivetrain, joints, screws, g.slip);
    case kinematics::GaitMode::kSidewinding:
      return kinematics::gait_sidewinding(g.sidewinding, t_s, joints, assembly.joint, screws);
    case kinematics::GaitMode::kIdle:
      break;
  }
  kinematics::GaitCommand idle;
  idle.joints.assign(joints, {});
  idle.screw_speeds_rad_s.assign(screws, 0.0);
  idle.t_s = t_s;
  return idle;
}

namespace
{

GaitSettings parse_gait(const Fields & f, const RobotAssembly & assembly)
{
  GaitSettings g;
  const auto mode = kinematics::parse_gait_mode(f.text("mode"));
  if (!mode) {
    malformed("gait mode must be 'idle', 'screwing', 'wheeling' or 'sidewinding'");
  }
  g.mode = *mode;
  g.turn_radius_m = f.number_or("turn_radius_m", g.turn_radius_m);
  g.screw_speed_rad_s = f.number_or("screw_speed_rad_s", 0.0);
  g.ground_speed_m_s = f.number_or("ground_speed_m_s", 0.0);
  g.slip = f.number_or("slip", 0.0);
  g.sidewinding.pitch_amplitude_rad = f.number_or("pitch_amplitude_rad", 0.0);
  g.sidewinding.yaw_amplitude_rad = f.number_or("yaw_amplitude_rad", 0.0);
  g.sidewinding.frequency_hz = f.number_or("frequency_hz", g.sidewinding.frequency_hz);
  g.sidewinding.phase_lag_rad = f.number_or("phase_lag_rad", 0.0);
  g.sidewinding.screw_speed_rad_s = g.screw_speed_rad_s;
  g.joint_load_kg = f.number_or("joint_load_kg", 0.0);
  require(g.joint_load_kg >= 0.0, ErrorCode::kOutOfRange, "joint load must be non-negative");
  check_screw_speed(g.screw_speed_rad_s, assembly);
  evaluate_gait(g, assembly, 0.0);  // throws for unreachable requests
  return g;
}

}  // namespace

ParsedCommand parse_command(const Json & message, const RobotAssembly & assembly)
{
  if (!message.is_object()) {
    malformed("message must be a JSON object");
  }
  if (!message.contains("type") || message.at("type") != "command") {
    malformed("expected a message with type 'command'");
  }
  if (!message.contains("action") || !message.at("action").is_string()) {
    malformed("command needs a string 'action'");
  }
  const std::string action = message.at("action").get<std::string>();

  ParsedCommand parsed{ResetCommand{}, message};
  if (action == "valve") {
    parsed.command = parse_valve(Fields(message, {"branch", "open", "mode", "upstream_pa"}), assembly);
  } else if (action == "gait") {
    parsed.command = parse_gait(
      Fields(
        message, {"mode", "turn_radius_m", "screw_speed_rad_s", "ground_speed_m_s", "slip", "pitch_amplitude_rad",
          "yaw_amplitude_rad", "frequency_hz", "phase_lag_rad", "joint_load_kg"}),
      assembly);
  } else if (action == "screw") {
    const Fields f(message, {"speed_rad_s"});
    const auto speed = f.number("speed_rad_s");
    if (!speed) {
      malformed("screw command needs 'speed_rad_s'");
    }
    check_screw_speed(*speed, assembly);
    parsed.command = ScrewCommand{*speed};
  } else if (action == "reset") {
    Fields(message, {});
  } else {
    malformed("unknown action '" + action + "'");
  }
  return parsed;
}

Json to_json(const Telemetry & r)
{
  Json joints = Json::array();
  for (const auto & j : r.joints) {
    joints.push_back({{"pitch_rad", j.pitch_rad}, {"yaw_rad", j.yaw_rad}});
  }
  return {
    {"type", "telemetry"},
    {"tick", r.tick},
    {"t_s", r.t_s},
    {"depth_m", r.depth_m},
    {"velocity_m_s", r.velocity_m_s},
    {"acceleration_m_s2", r.acceleration_m_s2},
    {"fill_front", r.fill[0]},
    {"fill_rear", r.fill[1]},
    {"valve_front", pneumatics::valve_mode_name(r.valves[0])},
    {"valve_rear", pneumatics::valve_mode_name(r.valves[1])},
    {"gait", kinematics::gait_mode_name(r.gait)},
    {"joints", std::move(joints)},
    {"screw_speeds_rad_s", r.screw_speeds_rad_s},
  };
}

std::string serialize(const Telemetry & record)
{
  return to_json(record).dump();
}

Json hello_message()
{
  return {{"type", "hello"}, {"version", kProtocolVersion}};
}

Json error_message(ErrorCode code, const std::string & message)
{
  return {{"type", "error"}, {"code", error_code_name(code)}, {"message", message}};
}

Session::Session(AssemblyPtr assembly, double tick_rate_hz, InitialState initial)
: assembly_(std::move(assembly)), tick_rate_hz_(tick_rate_hz), initial_(initial)
{
  require(assembly_ != nullptr, ErrorCode::kInvalidArgument, "session needs an assembly");
  require(
    std::isfinite(tick_rate_hz) && tick_rate_hz > 0.0, ErrorCode::kInvalidArgument, "tick rate must be positive");
  const double tank = assembly_->hydro.tank_depth_m;
  require(
    initial.depth_m >= 0.0 && initial.depth_m <= tank, ErrorCode::kOutOfRange,
    "initial depth must lie within the tank");
  for (double f : initial.fill) {
    require(f >= 0.0 && f <= 1.0, ErrorCode::kOutOfRange, "initial fill fractions must be in [0, 1]");
  }
  substeps_ = static_cast<int>(std::ceil(1.0 / tick_rate_hz / kMaxSubstepS - 1e-9));
  substeps_ = std::max(substeps_, 1);
  body_ = dynamics::VerticalBody::from_assembly(*assembly_);
  for (Branch b : kBranches) {
    branches_[static_cast<std::size_t>(b)] = pneumatics::BranchModel::from_assembly(*assembly_, b);
  }
  reset_physical_state();
}

void Session::submit(const Json & message)
{
  submit(parse_command(message, *assembly_));
}

void Session::submit(ParsedCommand command)
{
  std::lock_guard lock(queue_mutex_);
  queue_.push_back(std::move(command));
}

Telemetry Session::tick()
{
  std::deque<ParsedCommand> pending;
  {
    std::lock_guard lock(queue_mutex_);
    pending.swap(queue_);
  }
  for (const auto & cmd : pending) {
    if (observer_) {
      observer_(tick_, cmd.message);
    }
    apply(cmd.command);
  }

  const double dt = 1.0 / tick_rate_hz_ / substeps_;
  for (int s = 0; s < substeps_; ++s) {
    hydro::BranchFill fill{};
    for (std::size_t i = 0; i < branches_.size(); ++i) {
      volume_m3_[i] = branches_[i].advance(volume_m3_[i], valves_[i], upstream_pa_[i], dt);
      fill[i] = branches_[i].full_volume_m3 > 0.0 ? volume_m3_[i] / branches_[i].full_volume_m3 : 0.0;
    }
    vertical_ = dynamics::step(body_, fill, vertical_, dt);
  }
  ++tick_;
  vertical_.t_s = static_cast<double>(tick_) / tick_rate_hz_;
  update_gait(vertical_.t_s);
  return snapshot();
}

Telemetry Session::snapshot() const
{
  Telemetry r;
  r.tick = tick_;
  r.t_s = vertical_.t_s;
  r.depth_m = vertical_.depth_m;
  r.velocity_m_s = vertical_.velocity_m_s;
  r.acceleration_m_s2 = vertical_.acceleration_m_s2;
  for (std::size_t i = 0; i < branches_.size(); ++i) {
    r.fill[i] = branches_[i].full_volume_m3 > 0.0 ? volume_m3_[i] / branches_[i].full_volume_m3 : 0.0;
  }
  r.valves = valves_;
  r.joints = joints_;
  r.screw_speeds_rad_s = screws_;
  r.gait = gait_.mode;
  return r;
}

void Session::apply(const Command & command)
{
  std::visit(
    [this](const auto & c) {
      using T = std::decay_t<decltype(c)>;
      if constexpr (std::is_same_v<T, ValveCommand>) {
        for (Branch b : c.branches) {
          const auto i = static_cast<std::size_t>(b);
          valves_[i] = c.mode;
          if (c.upstream_pa) {
            upstream_pa_[i] = *c.upstream_pa;
          }
        }
      } else if constexpr (std::is_same_v<T, GaitSettings>) {
        gait_ = c;
        screw_override_.reset();
        update_gait(vertical_.t_s);
      } else if constexpr (std::is_same_v<T, ScrewCommand>) {
        screw_override_ = c.speed_rad_s;
        update_gait(vertical_.t_s);
      } else {
        reset_physical_state();
      }
    },
    command);
}

void Session::reset_physical_state()
{
  const double t = vertical_.t_s;
  vertical_ = {};
  vertical_.depth_m = initial_.depth_m;
  vertical_.velocity_m_s = initial_.velocity_m_s;
  vertical_.t_s = t;
  for (std::size_t i = 0; i < branches_.size(); ++i) {
    volume_m3_[i] = initial_.fill[i] * branches_[i].full_volume_m3;
    valves_[i] = pneumatics::ValveMode::kClosed;
    upstream_pa_[i] = assembly_->pneumatics.regulator_gauge_pa;
  }
  gait_ = {};
  screw_override_.reset();
  const std::size_t n = assembly_->joint_count();
  pitch_play_.assign(n, kinematics::PlayOperator());
  yaw_play_.assign(n, kinematics::PlayOperator());
  update_gait(t);
}

void Session::update_gait(double t_s)
{
  const auto cmd = evaluate_gait(gait_, *assembly_, t_s);
  const auto & model = assembly_->joint.hysteresis;
  joints_.resize(cmd.joints.size());
  for (std::size_t i = 0; i < cmd.joints.size(); ++i) {
    joints_[i].pitch_rad = kinematics::apply_hysteresis(cmd.joints[i].pitch_rad, gait_.joint_load_kg, model, pitch_play_[i]);
    joints_[i].yaw_rad = kinematics::apply_hysteresis(cmd.joints[i].yaw_rad, gait_.joint_load_kg, model, yaw_play_[i]);
  }
  screws_ = cmd.screw_speeds_rad_s;
  if (screw_override_) {
    screws_.assign(screws_.size(), *screw_override_);
  }
}

}  // namespace snakeforge::service
