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

#include "core/scenario.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "core/error.hpp"
#include "core/manifest.hpp"
#include "core/units.hpp"

namespace snakeforge::scenario
{

namespace
{

using manifest::Issue;
using units::Dimension;

int line_of(const YAML::Node & node)
{
  return node.IsDefined() && node.Mark().line >= 0 ? node.Mark().line + 1 : 0;
}

struct Field
{
  const char * json_key;
  Dimension dimension;  // kDimensionless with text = true for strings/bools
  bool text = false;
};

// Scenario keys per action and the wire field each one becomes.
const std::map<std::string, std::map<std::string, Field>> & action_fields()
{
  static const std::map<std::string, std::map<std::string, Field>> fields{
    {"valve",
      {{"branch", {"branch", Dimension::kDimensionless, true}},
        {"mode", {"mode", Dimension::kDimensionless, true}},
        {"open", {"open", Dimension::kDimensionless, true}},
        {"upstream", {"upstream_pa", Dimension::kPressure}}}},
    {"gait",
      {{"mode", {"mode", Dimension::kDimensionless, true}},
        {"turn_radius", {"turn_radius_m", Dimension::kLength}},
        {"screw_speed", {"screw_speed_rad_s", Dimension::kAngularVelocity}},
        {"ground_speed", {"ground_speed_m_s", Dimension::kVelocity}},
        {"slip", {"slip", Dimension::kDimensionless}},
        {"pitch_amplitude", {"pitch_amplitude_rad", Dimension::kAngle}},
        {"yaw_amplitude", {"yaw_amplitude_rad", Dimension::kAngle}},
        {"frequency", {"frequency_hz", Dimension::kFrequency}},
        {"phase_lag", {"phase_lag_rad", Dimension::kAngle}},
        {"joint_load", {"joint_load_kg", Dimension::kMass}}}},
    {"screw", {{"speed", {"speed_rad_s", Dimension::kAngularVelocity}}}},
    {"reset", {}},
  };
  return fields;
}

class Reader
{
public:
  std::vector<Issue> issues;

  void error(const std::string & field, const YAML::Node & node, const std::string & message, bool parse = false)
  {
    issues.push_back({field, line_of(node), message, parse});
  }

  std::optional<double> quantity(const YAML::Node & node, const std::string & field, Dimension dimension)
  {
    if (!node.IsScalar()) {
      error(field, node, "expected a scalar quantity", true);
      return std::nullopt;
    }
    try {
      return units::parse_quantity(node.Scalar(), dimension).si;
    } catch (const Error & e) {
      error(field, node, e.what(), e.code() == ErrorCode::kParse);
      return std::nullopt;
    }
  }
};

Event read_event(Reader & r, const YAML::Node & node, const std::string & path)
{
  Event ev;
  if (!node.IsMap()) {
    r.error(path, node, "event must be a mapping", true);
    return ev;
  }
  if (auto t = r.quantity(node["at"], path + ".at", Dimension::kTime)) {
    ev.t_s = *t;
    if (*t < 0.0) {
      r.error(path + ".at", node["at"], "event time must be non-negative");
    }
  }
  const YAML::Node action_node = node["action"];
  if (!action_node.IsDefined() || !action_node.IsScalar()) {
    r.error(path + ".action", node, "missing required field");
    return ev;
  }
  const std::string action = action_node.Scalar();
  const auto found = action_fields().find(action);
  if (found == action_fields().end()) {
    r.error(path + ".action", action_node, "unknown action '" + action + "'");
    return ev;
  }

  ev.command = {{"type", "command"}, {"action", action}};
  for (const auto & kv : node) {
    const auto key = kv.first.as<std::string>();
    if (key == "at" || key == "action") {
      continue;
    }
    const std::string field = path + "." + key;
    const auto spec = found->second.find(key);
    if (spec == found->second.end()) {
      r.error(field, kv.first, "unknown field");
      continue;
    }
    const Field & f = spec->second;
    if (f.text) {
      if (key == "open") {
        try {
          ev.command[f.json_key] = kv.second.as<bool>();
        } catch (const YAML::Exception &) {
          r.error(field, kv.second, "expected true or false", true);
        }
      } else {
        ev.command[f.json_key] = kv.second.as<std::string>();
      }
    } else if (auto v = r.quantity(kv.second, field, f.dimension)) {
      ev.command[f.json_key] = *v;
    }
  }
  return ev;
}

Scenario read_document(Reader & r, const YAML::Node & root)
{
  static const std::set<std::string> known{"name", "horizon", "stop", "initial", "events"};
  for (const auto & kv : root) {
    const auto key = kv.first.as<std::string>();
    if (!known.count(key)) {
      r.error(key, kv.first, "unknown field");
    }
  }

  Scenario s;
  if (root["name"].IsDefined()) {
    s.name = root["name"].as<std::string>();
  }
  if (root["horizon"].IsDefined()) {
    if (auto h = r.quantity(root["horizon"], "horizon", Dimension::kTime)) {
      s.horizon_s = *h;
      if (*h <= 0.0) {
        r.error("horizon", root["horizon"], "horizon must be positive");
      }
    }
  }
  if (const YAML::Node stop = root["stop"]; stop.IsDefined()) {
    const auto text = stop.as<std::string>();
    if (text == "floor") {
      s.stop = dynamics::Travel::kDescent;
    } else if (text == "surface") {
      s.stop = dynamics::Travel::kAscent;
    } else if (text != "none") {
      r.error("stop", stop, "stop must be 'floor', 'surface' or 'none'");
    }
  }

  if (const YAML::Node init = root["initial"]; init.IsDefined()) {
    if (!init.IsMap()) {
      r.error("initial", init, "expected a mapping", true);
    } else {
      static const std::set<std::string> keys{"depth", "velocity", "fill_front", "fill_rear"};
      for (const auto & kv : init) {
        if (!keys.count(kv.first.as<std::string>())) {
          r.error("initial." + kv.first.as<std::string>(), kv.first, "unknown field");
        }
      }
      const auto read = [&](const char * key, Dimension dim, double & out) {
          if (init[key].IsDefined()) {
            if (auto v = r.quantity(init[key], std::string("initial.") + key, dim)) {
              out = *v;
            }
          }
        };
      read("depth", Dimension::kLength, s.initial.depth_m);
      read("velocity", Dimension::kVelocity, s.initial.velocity_m_s);
      read("fill_front", Dimension::kDimensionless, s.initial.fill[0]);
      read("fill_rear", Dimension::kDimensionless, s.initial.fill[1]);
      for (std::size_t i = 0; i < 2; ++i) {
        if (s.initial.fill[i] < 0.0 || s.initial.fill[i] > 1.0) {
          r.error(i == 0 ? "initial.fill_front" : "initial.fill_rear", init, "fill fraction must be in [0, 1]");
        }
      }
      if (s.initial.depth_m < 0.0) {
        r.error("initial.depth", init, "depth must be non-negative");
      }
    }
  }

  if (const YAML::Node events = root["events"]; events.IsDefined() && !events.IsNull()) {
    if (!events.IsSequence()) {
      r.error("events", events, "expected a list", true);
    } else {
      for (std::size_t i = 0; i < events.size(); ++i) {
        s.events.push_back(read_event(r, events[i], "events[" + std::to_string(i) + "]"));
      }
    }
  }
  std::stable_sort(
    s.events.begin(), s.events.end(), [](const Event & a, const Event & b) {return a.t_s < b.t_s;});
  return s;
}

service::Json valve_event(const char * mode, double upstream_pa)
{
  return {
    {"type", "command"}, {"action", "valve"}, {"branch", "both"}, {"mode", mode}, {"upstream_pa", upstream_pa}};
}

}  // namespace

Scenario load_scenario(std::string_view document)
{
  YAML::Node root;
  try {
    root = YAML::Load(std::string(document));
  } catch (const YAML::ParserException & e) {
    throw manifest::ManifestError({{"", e.mark.line + 1, e.msg, true}});
  }
  if (!root.IsMap()) {
    throw manifest::ManifestError({{"", line_of(root), "scenario must be a mapping", true}});
  }
  Reader reader;
  Scenario s;
  try {
    s = read_document(reader, root);
  } catch (const YAML::Exception & e) {
    reader.issues.push_back({"", e.mark.line + 1, e.msg, true});
  }
  if (!reader.issues.empty()) {
    throw manifest::ManifestError(std::move(reader.issues));
  }
  return s;
}

Scenario load_scenario_file(const std::string & path)
{
  std::ifstream in(path);
  require(in.good(), ErrorCode::kIo, "cannot open scenario '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return load_scenario(text.str());
}

Scenario descent_scenario(const RobotAssembly & /*assembly*/)
{
  Scenario s;
  s.name = "descent";
  s.horizon_s = 120.0;
  s.stop = dynamics::Travel::kDescent;
  s.initial.fill = {1.0, 1.0};
  s.events.push_back({0.0, {{"type", "command"}, {"action", "valve"}, {"branch", "both"}, {"mode", "vent"}}});
  return s;
}

Scenario ascent_scenario(const RobotAssembly & assembly)
{
  Scenario s;
  s.name = "ascent";
  s.horizon_s = 120.0;
  s.stop = dynamics::Travel::kAscent;
  s.initial.depth_m = assembly.hydro.tank_depth_m;
  s.events.push_back({0.0, valve_event("inflate", assembly.pneumatics.rise_upstream_gauge_pa)});
  return s;
}

Run run(const AssemblyPtr & assembly, const Scenario & scenario, double dt_s, const RunOptions & options)
{
  require(dt_s > 0.0 && dt_s <= 0.1, ErrorCode::kInvalidArgument, "time step must be in (0, 0.1] s");
  require(scenario.horizon_s > 0.0, ErrorCode::kInvalidArgument, "horizon must be positive");
  const double rate = 1.0 / dt_s;
  service::Session session(assembly, rate, scenario.initial);
  if (options.on_apply) {
    session.set_apply_observer(options.on_apply);
  }

  // Validate every event up front so a bad one fails before any stepping.
  std::vector<std::pair<long, service::ParsedCommand>> events;
  for (const auto & ev : scenario.events) {
    require(ev.t_s <= scenario.horizon_s, ErrorCode::kOutOfRange, "event scheduled after the horizon");
    events.emplace_back(std::lround(ev.t_s * rate), service::parse_command(ev.command, *assembly));
  }

  Run out;
  const auto emit = [&](service::Telemetry rec) {
      if (options.on_record) {
        options.on_record(rec);
      }
      out.records.push_back(std::move(rec));
    };
  emit(session.snapshot());

  const double tank = assembly->hydro.tank_depth_m;
  const long ticks = std::lround(std::ceil(scenario.horizon_s * rate - 1e-9));
  std::size_t next = 0;
  bool departed = false;
  for (long k = 0; k < ticks; ++k) {
    while (next < events.size() && events[next].first <= k) {
      session.submit(std::move(events[next].second));
      ++next;
    }
    emit(session.tick());
    if (scenario.stop) {
      const double depth = out.records.back().depth_m;
      const double p = *scenario.stop == dynamics::Travel::kDescent ? depth / tank : 1.0 - depth / tank;
      departed = departed || p > 0.0;
      if (departed && p >= 1.0) {
        break;
      }
    }
  }

  if (scenario.stop) {
    std::vector<dynamics::VerticalState> states;
    states.reserve(out.records.size());
    for (const auto & r : out.records) {
      states.push_back({r.depth_m, r.velocity_m_s, r.acceleration_m_s2, r.t_s});
    }
    out.summary = dynamics::summarize(states, *scenario.stop, assembly->hydro);
  }
  return out;
}

}  // namespace snakeforge::scenario
