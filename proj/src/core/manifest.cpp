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

#include "core/manifest.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "core/hydrostatics.hpp"

#ifndef SNAKEFORGE_DEFAULT_ASSEMBLY
#define SNAKEFORGE_DEFAULT_ASSEMBLY "data/arcsnake_v2.yaml"
#endif

namespace snakeforge::manifest
{

namespace
{

using units::Dimension;

constexpr double kMaxSettlePressurePa = 5.0 * units::kPsiToPa;
constexpr double kCompressorCeilingPa = 15.0 * units::kPsiToPa;

std::string join_issues(const std::vector<Issue> & issues)
{
  std::ostringstream out;
  for (std::size_t i = 0; i < issues.size(); ++i) {
    if (i > 0) {
      out << "\n";
    }
    out << issues[i].describe();
  }
  return out.str();
}

ErrorCode code_for(const std::vector<Issue> & issues)
{
  const bool any_parse = std::any_of(issues.begin(), issues.end(), [](const Issue & i) {return i.parse;});
  return any_parse ? ErrorCode::kParse : ErrorCode::kValidation;
}

int line_of(const YAML::Node & node)
{
  return node.IsDefined() && node.Mark().line >= 0 ? node.Mark().line + 1 : 0;
}

// Walks the document, converting quantities and collecting issues.
class Reader
{
public:
  std::vector<Issue> issues;
  std::vector<std::string> warnings;

  void error(const std::string & field, const YAML::Node & node, const std::string & message, bool parse = false)
  {
    issues.push_back({field, line_of(node), message, parse});
  }

  void check_keys(const YAML::Node & map, const std::string & path, std::initializer_list<const char *> allowed)
  {
    if (!map.IsMap()) {
      return;
    }
    const std::set<std::string> known(allowed.begin(), allowed.end());
    for (const auto & kv : map) {
      const auto key = kv.first.as<std::string>();
      if (!known.count(key)) {
        error(join(path, key), kv.first, "unknown field");
      }
    }
  }

  static std::string join(const std::string & path, const std::string & key)
  {
    return path.empty() ? key : path + "." + key;
  }

  YAML::Node section(const YAML::Node & parent, const char * key, const std::string & path)
  {
    // Missing sections come back as an empty node, never an invalid one.
    YAML::Node node = parent.IsMap() ? parent[key] : YAML::Node();
    if (!node.IsDefined()) {
      return YAML::Node();
    }
    if (!node.IsNull() && !node.IsMap()) {
      error(join(path, key), node, "expected a mapping");
      return YAML::Node();
    }
    return node;
  }

  double quantity(
    const YAML::Node & parent, const char * key, Dimension dimension, std::optional<double> fallback,
    const std::string & path)
  {
    const std::string field = join(path, key);
    const YAML::Node node = parent.IsMap() ? parent[key] : YAML::Node();
    if (!node.IsDefined() || node.IsNull()) {
      if (!fallback) {
        error(field, parent, "missing required field");
        return 0.0;
      }
      return *fallback;
    }
    if (!node.IsScalar()) {
      error(field, node, "expected a scalar quantity", true);
      return fallback.value_or(0.0);
    }
    try {
      const auto parsed = units::parse_quantity(node.Scalar(), dimension);
      if (parsed.deprecated_unit) {
        warnings.push_back(
          field + ": '" + parsed.unit + "' is read as a gauge pressure (" + node.Scalar() + ")");
      }
      return parsed.si;
    } catch (const Error & e) {
      error(field, node, e.what(), e.code() == ErrorCode::kParse);
      return fallback.value_or(0.0);
    }
  }

  std::optional<double> optional_quantity(
    const YAML::Node & parent, const char * key, Dimension dimension, const std::string & path)
  {
    if (!parent.IsMap() || !parent[key].IsDefined() || parent[key].IsNull()) {
      return std::nullopt;
    }
    return quantity(parent, key, dimension, std::nullopt, path);
  }

  template<typename T>
  T scalar(const YAML::Node & parent, const char * key, T fallback, const std::string & path)
  {
    const YAML::Node node = parent.IsMap() ? parent[key] : YAML::Node();
    if (!node.IsDefined() || node.IsNull()) {
      return fallback;
    }
    try {
      return node.as<T>();
    } catch (const YAML::Exception &) {
      error(join(path, key), node, "malformed value '" + (node.IsScalar() ? node.Scalar() : "") + "'", true);
      return fallback;
    }
  }

  void expect(bool ok, const std::string & field, const YAML::Node & node, const std::string & message)
  {
    if (!ok) {
      error(field, node, message);
    }
  }
};

ShellSpec read_shell(Reader & r, const std::string & name, const YAML::Node & node, const std::string & path)
{
  r.check_keys(node, path, {"mass", "displaced_volume", "foam_filled", "reference_net_force"});
  ShellSpec shell;
  shell.name = name;
  shell.mass_kg = r.quantity(node, "mass", Dimension::kMass, std::nullopt, path);
  shell.displaced_volume_m3 = r.quantity(node, "displaced_volume", Dimension::kVolume, std::nullopt, path);
  shell.foam_filled = r.scalar<bool>(node, "foam_filled", false, path);
  shell.reference_net_force_n = r.optional_quantity(node, "reference_net_force", Dimension::kForce, path);
  r.expect(shell.mass_kg > 0.0, path + ".mass", node, "must be positive");
  r.expect(shell.displaced_volume_m3 > 0.0, path + ".displaced_volume", node, "must be positive");
  return shell;
}

TubeRun read_tube(Reader & r, const YAML::Node & node, const std::string & path)
{
  r.check_keys(node, path, {"length", "inner_diameter", "friction_factor", "minor_losses"});
  TubeRun tube;
  tube.length_m = r.quantity(node, "length", Dimension::kLength, std::nullopt, path);
  tube.inner_diameter_m = r.quantity(node, "inner_diameter", Dimension::kLength, std::nullopt, path);
  tube.darcy_friction_factor = r.quantity(node, "friction_factor", Dimension::kDimensionless, std::nullopt, path);
  r.expect(tube.length_m > 0.0, path + ".length", node, "must be positive");
  r.expect(tube.inner_diameter_m > 0.0, path + ".inner_diameter", node, "must be positive");
  r.expect(tube.darcy_friction_factor > 0.0, path + ".friction_factor", node, "must be positive");
  const YAML::Node losses = node["minor_losses"];
  if (losses.IsDefined() && !losses.IsNull()) {
    if (!losses.IsSequence()) {
      r.error(path + ".minor_losses", losses, "expected a list");
    } else {
      for (std::size_t i = 0; i < losses.size(); ++i) {
        const std::string field = path + ".minor_losses[" + std::to_string(i) + "]";
        try {
          const double k = units::parse_quantity(losses[i].as<std::string>(), Dimension::kDimensionless).si;
          r.expect(k >= 0.0, field, losses[i], "loss coefficient must be non-negative");
          tube.minor_loss_coefficients.push_back(k);
        } catch (const Error & e) {
          r.error(field, losses[i], e.what(), true);
        }
      }
    }
  }
  return tube;
}

RobotAssembly read_document(Reader & r, const YAML::Node & root)
{
  RobotAssembly a;
  r.check_keys(
    root, "",
    {"name", "environment", "dimensions", "internal_pressure", "power", "shells", "bladder", "segments", "joints",
      "drivetrain", "pneumatics", "hydro", "comms"});

  a.name = r.scalar<std::string>(root, "name", "assembly", "");
  a.internal_pressure_gauge_pa =
    r.quantity(root, "internal_pressure", Dimension::kPressure, a.internal_pressure_gauge_pa, "");

  {
    const auto env = r.section(root, "environment", "");
    r.check_keys(env, "environment", {"fluid_density", "gravity"});
    a.fluid_density_kg_m3 =
      r.quantity(env, "fluid_density", Dimension::kDensity, kDefaultWaterDensity, "environment");
    a.g_m_s2 = r.quantity(env, "gravity", Dimension::kAcceleration, kDefaultGravity, "environment");
    r.expect(a.fluid_density_kg_m3 > 0.0, "environment.fluid_density", env, "must be positive");
    r.expect(a.g_m_s2 > 0.0, "environment.gravity", env, "must be positive");
  }
  {
    const auto dims = r.section(root, "dimensions", "");
    r.check_keys(dims, "dimensions", {"segment_length", "max_length", "max_diameter"});
    a.segment_length_m = r.quantity(dims, "segment_length", Dimension::kLength, a.segment_length_m, "dimensions");
    a.max_length_m = r.quantity(dims, "max_length", Dimension::kLength, a.max_length_m, "dimensions");
    a.max_diameter_m = r.quantity(dims, "max_diameter", Dimension::kLength, a.max_diameter_m, "dimensions");
    r.expect(a.segment_length_m > 0.0, "dimensions.segment_length", dims, "must be positive");
  }
  {
    const auto power = r.section(root, "power", "");
    r.check_keys(power, "power", {"segment_max", "system_max"});
    a.power.segment_max_w = r.quantity(power, "segment_max", Dimension::kPower, a.power.segment_max_w, "power");
    a.power.system_max_w = r.quantity(power, "system_max", Dimension::kPower, a.power.system_max_w, "power");
  }

  std::map<std::string, ShellSpec> shell_library;
  {
    const auto shells = r.section(root, "shells", "");
    if (shells.IsMap()) {
      for (const auto & kv : shells) {
        const auto name = kv.first.as<std::string>();
        shell_library[name] = read_shell(r, name, kv.second, "shells." + name);
      }
    }
  }

  {
    const auto node = r.section(root, "bladder", "");
    const std::string p = "bladder";
    r.check_keys(
      node, p,
      {"minor_diameter", "major_diameter", "empty_mass", "settle_pressure", "seam_allowance", "reference_net_force"});
    const double minor = r.quantity(node, "minor_diameter", Dimension::kLength, 0.0602, p);
    const double major = r.quantity(node, "major_diameter", Dimension::kLength, 0.16, p);
    const double mass = r.quantity(node, "empty_mass", Dimension::kMass, 0.02, p);
    const double settle = r.quantity(node, "settle_pressure", Dimension::kPressure, 0.15 * units::kBarToPa, p);
    r.expect(
      settle > 0.0 && settle <= kMaxSettlePressurePa, p + ".settle_pressure", node,
      "outside the safe band (0, 5 psi] gauge");
    r.expect(major <= a.max_diameter_m, p + ".major_diameter", node, "exceeds the system max diameter");
    try {
      a.bladder = BladderSpec(minor, major, mass, settle);
    } catch (const Error & e) {
      r.error(p + ".minor_diameter", node, e.what());
    }
    a.bladder.seam_allowance_m = r.quantity(node, "seam_allowance", Dimension::kLength, 0.0, p);
    a.bladder.reference_net_force_n = r.optional_quantity(node, "reference_net_force", Dimension::kForce, p);
  }

  {
    const YAML::Node segs = root["segments"];
    if (!segs.IsDefined() || segs.IsNull() || (segs.IsSequence() && segs.size() == 0)) {
      r.error("segments", segs.IsDefined() ? segs : root, "at least one segment is required");
    } else if (!segs.IsSequence()) {
      r.error("segments", segs, "expected a list");
    } else {
      for (std::size_t i = 0; i < segs.size(); ++i) {
        const YAML::Node node = segs[i];
        const std::string p = "segments[" + std::to_string(i) + "]";
        r.check_keys(
          node, p,
          {"name", "mass", "ballast", "displaced_volume", "reference_net_force", "shells", "bladder_slots",
            "branch"});
        SegmentSpec s;
        s.name = r.scalar<std::string>(node, "name", "segment-" + std::to_string(i + 1), p);
        s.mass_kg = r.quantity(node, "mass", Dimension::kMass, std::nullopt, p);
        s.ballast_kg = r.quantity(node, "ballast", Dimension::kMass, 0.0, p);
        s.displaced_volume_m3 = r.quantity(node, "displaced_volume", Dimension::kVolume, std::nullopt, p);
        s.reference_net_force_n = r.optional_quantity(node, "reference_net_force", Dimension::kForce, p);
        s.bladder_slots = r.scalar<int>(node, "bladder_slots", 0, p);
        r.expect(s.mass_kg > 0.0, p + ".mass", node, "must be positive");
        r.expect(s.ballast_kg >= 0.0, p + ".ballast", node, "must be non-negative");
        r.expect(s.displaced_volume_m3 > 0.0, p + ".displaced_volume", node, "must be positive");
        r.expect(
          s.bladder_slots >= 0 && s.bladder_slots <= 2, p + ".bladder_slots", node,
          "must be between 0 and 2 (two bladders per joint)");
        const auto branch = r.scalar<std::string>(node, "branch", i < (segs.size() + 1) / 2 ? "front" : "rear", p);
        if (auto b = parse_branch(branch)) {
          s.branch = *b;
        } else {
          r.error(p + ".branch", node["branch"], "unknown branch '" + branch + "' (front or rear)");
        }
        const YAML::Node shells = node["shells"];
        if (shells.IsDefined() && !shells.IsNull()) {
          if (!shells.IsSequence()) {
            r.error(p + ".shells", shells, "expected a list of shell names");
          } else {
            for (std::size_t k = 0; k < shells.size(); ++k) {
              const auto name = shells[k].as<std::string>();
              auto it = shell_library.find(name);
              if (it == shell_library.end()) {
                r.error(p + ".shells[" + std::to_string(k) + "]", shells[k], "unknown shell '" + name + "'");
              } else {
                s.shells.push_back(it->second);
              }
            }
          }
        }
        a.segments.push_back(std::move(s));
      }
    }
  }

  {
    const auto node = r.section(root, "joints", "");
    const std::string p = "joints";
    r.check_keys(node, p, {"pitch_limit", "yaw_limit", "continuous_torque", "peak_torque", "hysteresis"});
    a.joint.pitch_limit_rad = r.quantity(node, "pitch_limit", Dimension::kAngle, a.joint.pitch_limit_rad, p);
    a.joint.yaw_limit_rad = r.quantity(node, "yaw_limit", Dimension::kAngle, a.joint.yaw_limit_rad, p);
    a.joint.continuous_torque_nm =
      r.quantity(node, "continuous_torque", Dimension::kTorque, a.joint.continuous_torque_nm, p);
    a.joint.peak_torque_nm = r.quantity(node, "peak_torque", Dimension::kTorque, a.joint.peak_torque_nm, p);
    r.expect(a.joint.pitch_limit_rad > 0.0, p + ".pitch_limit", node, "must be positive");
    r.expect(a.joint.yaw_limit_rad > 0.0, p + ".yaw_limit", node, "must be positive");
    const auto hyst = r.section(node, "hysteresis", p);
    const std::string hp = p + ".hysteresis";
    r.check_keys(hyst, hp, {"width_intercept", "width_slope"});
    a.joint.hysteresis.width_intercept_rad =
      r.quantity(hyst, "width_intercept", Dimension::kAngle, a.joint.hysteresis.width_intercept_rad, hp);
    a.joint.hysteresis.width_slope_rad_per_kg =
      r.quantity(hyst, "width_slope", Dimension::kAnglePerMass, a.joint.hysteresis.width_slope_rad_per_kg, hp);
    r.expect(a.joint.hysteresis.width_intercept_rad >= 0.0, hp + ".width_intercept", hyst, "must be non-negative");
    r.expect(a.joint.hysteresis.width_slope_rad_per_kg >= 0.0, hp + ".width_slope", hyst, "must be non-negative");
  }

  {
    const auto node = r.section(root, "drivetrain", "");
    const std::string p = "drivetrain";
    r.check_keys(
      node, p,
      {"motor_max_torque", "gear_ratio", "effective_screw_radius", "ujoint_internal_ratio", "ujoint_external_ratio",
        "screw_continuous_torque", "screw_peak_torque", "max_screw_speed", "measured_curve"});
    auto & d = a.drivetrain;
    d.motor_max_torque_nm = r.quantity(node, "motor_max_torque", Dimension::kTorque, d.motor_max_torque_nm, p);
    d.gear_ratio = r.quantity(node, "gear_ratio", Dimension::kDimensionless, d.gear_ratio, p);
    d.effective_screw_radius_m =
      r.quantity(node, "effective_screw_radius", Dimension::kLength, d.effective_screw_radius_m, p);
    d.ujoint_internal_ratio =
      r.quantity(node, "ujoint_internal_ratio", Dimension::kDimensionless, d.ujoint_internal_ratio, p);
    d.ujoint_external_ratio =
      r.quantity(node, "ujoint_external_ratio", Dimension::kDimensionless, d.ujoint_external_ratio, p);
    d.screw_continuous_torque_nm =
      r.quantity(node, "screw_continuous_torque", Dimension::kTorque, d.screw_continuous_torque_nm, p);
    d.screw_peak_torque_nm = r.quantity(node, "screw_peak_torque", Dimension::kTorque, d.screw_peak_torque_nm, p);
    d.max_screw_speed_rad_s =
      r.quantity(node, "max_screw_speed", Dimension::kAngularVelocity, d.max_screw_speed_rad_s, p);
    const auto curve = r.section(node, "measured_curve", p);
    const std::string cp = p + ".measured_curve";
    r.check_keys(curve, cp, {"low_speed", "low_force", "high_speed", "high_force"});
    d.curve_low_speed_rad_s = r.quantity(curve, "low_speed", Dimension::kAngularVelocity, d.curve_low_speed_rad_s, cp);
    d.curve_low_force_n = r.quantity(curve, "low_force", Dimension::kForce, d.curve_low_force_n, cp);
    d.curve_high_speed_rad_s =
      r.quantity(curve, "high_speed", Dimension::kAngularVelocity, d.curve_high_speed_rad_s, cp);
    d.curve_high_force_n = r.quantity(curve, "high_force", Dimension::kForce, d.curve_high_force_n, cp);
    for (auto [value, field] : std::initializer_list<std::pair<double, const char *>>{
        {d.motor_max_torque_nm, "motor_max_torque"}, {d.gear_ratio, "gear_ratio"},
        {d.effective_screw_radius_m, "effective_screw_radius"}, {d.ujoint_internal_ratio, "ujoint_internal_ratio"},
        {d.ujoint_external_ratio, "ujoint_external_ratio"}, {d.max_screw_speed_rad_s, "max_screw_speed"}})
    {
      r.expect(value > 0.0, p + "." + field, node, "must be positive");
    }
    r.expect(
      d.curve_high_speed_rad_s > d.curve_low_speed_rad_s, cp + ".high_speed", curve,
      "must be above low_speed");
  }

  {
    const auto node = r.section(root, "pneumatics", "");
    const std::string p = "pneumatics";
    r.check_keys(
      node, p,
      {"regulator", "rise_upstream", "compressor_limit", "air_density", "fill_deadline", "branches"});
    auto & pn = a.pneumatics;
    pn.compressor_limit_gauge_pa =
      r.quantity(node, "compressor_limit", Dimension::kPressure, pn.compressor_limit_gauge_pa, p);
    pn.regulator_gauge_pa = r.quantity(node, "regulator", Dimension::kPressure, pn.regulator_gauge_pa, p);
    pn.rise_upstream_gauge_pa = r.quantity(node, "rise_upstream", Dimension::kPressure, pn.rise_upstream_gauge_pa, p);
    pn.air_density_kg_m3 = r.quantity(node, "air_density", Dimension::kDensity, pn.air_density_kg_m3, p);
    pn.fill_deadline_s = r.quantity(node, "fill_deadline", Dimension::kTime, pn.fill_deadline_s, p);
    r.expect(
      pn.compressor_limit_gauge_pa > 0.0 && pn.compressor_limit_gauge_pa <= kCompressorCeilingPa,
      p + ".compressor_limit", node, "must be in (0, 15 psi] gauge");
    r.expect(
      pn.regulator_gauge_pa >= 0.0 && pn.regulator_gauge_pa <= pn.compressor_limit_gauge_pa, p + ".regulator", node,
      "must be within [0, compressor_limit]");
    r.expect(
      pn.rise_upstream_gauge_pa >= 0.0 && pn.rise_upstream_gauge_pa <= pn.compressor_limit_gauge_pa,
      p + ".rise_upstream", node, "must be within [0, compressor_limit]");
    r.expect(pn.air_density_kg_m3 > 0.0, p + ".air_density", node, "must be positive");
    r.expect(pn.fill_deadline_s > 0.0, p + ".fill_deadline", node, "must be positive");

    const auto branches = r.section(node, "branches", p);
    r.check_keys(branches, p + ".branches", {"front", "rear"});
    for (Branch b : kBranches) {
      const std::string bp = p + ".branches." + branch_name(b);
      const YAML::Node bn = branches.IsMap() ? branches[branch_name(b)] : YAML::Node();
      if (!bn.IsDefined() || !bn.IsMap()) {
        r.error(bp, branches.IsDefined() ? branches : node, "branch is required");
        continue;
      }
      r.check_keys(bn, bp, {"flow_resistance", "vent_resistance", "tubes"});
      auto & spec = pn.branches[static_cast<std::size_t>(b)];
      spec.flow_resistance = r.quantity(bn, "flow_resistance", Dimension::kFlowResistance, std::nullopt, bp);
      spec.vent_resistance = r.quantity(bn, "vent_resistance", Dimension::kFlowResistance, std::nullopt, bp);
      r.expect(spec.flow_resistance > 0.0, bp + ".flow_resistance", bn, "must be positive");
      r.expect(spec.vent_resistance > 0.0, bp + ".vent_resistance", bn, "must be positive");
      const YAML::Node tubes = bn["tubes"];
      if (tubes.IsDefined() && tubes.IsSequence()) {
        for (std::size_t i = 0; i < tubes.size(); ++i) {
          spec.tubes.push_back(read_tube(r, tubes[i], bp + ".tubes[" + std::to_string(i) + "]"));
        }
      }
    }
  }

  {
    const auto node = r.section(root, "hydro", "");
    const std::string p = "hydro";
    r.check_keys(node, p, {"drag_coefficient", "added_mass", "tank_depth", "window_start", "window_end"});
    auto & h = a.hydro;
    h.drag_coefficient = r.quantity(node, "drag_coefficient", Dimension::kDragCoefficient, h.drag_coefficient, p);
    h.added_mass_kg = r.quantity(node, "added_mass", Dimension::kMass, h.added_mass_kg, p);
    h.tank_depth_m = r.quantity(node, "tank_depth", Dimension::kLength, h.tank_depth_m, p);
    h.window_start = r.quantity(node, "window_start", Dimension::kDimensionless, h.window_start, p);
    h.window_end = r.quantity(node, "window_end", Dimension::kDimensionless, h.window_end, p);
    r.expect(h.drag_coefficient >= 0.0, p + ".drag_coefficient", node, "must be non-negative");
    r.expect(h.added_mass_kg >= 0.0, p + ".added_mass", node, "must be non-negative");
    r.expect(h.tank_depth_m > 0.0, p + ".tank_depth", node, "must be positive");
    r.expect(
      h.window_start >= 0.0 && h.window_start < h.window_end && h.window_end <= 1.0, p + ".window_start", node,
      "summary window must satisfy 0 <= start < end <= 1");
  }

  {
    const auto node = r.section(root, "comms", "");
    const std::string p = "comms";
    r.check_keys(node, p, {"nodes", "first_hop_rtt", "per_node_increment", "jitter"});
    auto & c = a.comms;
    c.node_count = r.scalar<int>(node, "nodes", c.node_count, p);
    c.first_hop_rtt_s = r.quantity(node, "first_hop_rtt", Dimension::kTime, c.first_hop_rtt_s, p);
    c.per_node_rtt_increment_s = r.quantity(node, "per_node_increment", Dimension::kTime, c.per_node_rtt_increment_s, p);
    c.jitter_bound_s = r.quantity(node, "jitter", Dimension::kTime, c.jitter_bound_s, p);
    r.expect(c.node_count >= 1, p + ".nodes", node, "must be at least 1");
    r.expect(c.first_hop_rtt_s > 0.0, p + ".first_hop_rtt", node, "must be positive");
    r.expect(c.per_node_rtt_increment_s > 0.0, p + ".per_node_increment", node, "must be positive");
    r.expect(
      c.jitter_bound_s >= 0.0 && c.jitter_bound_s < c.first_hop_rtt_s, p + ".jitter", node,
      "must be non-negative and below the first-hop latency");
  }

  return a;
}

void add_consistency_warnings(RobotAssembly & a)
{
  const double chain_length = a.segment_length_m * static_cast<double>(a.segments.size());
  if (chain_length > a.max_length_m) {
    std::ostringstream msg;
    msg << "segments span " << chain_length << " m, longer than the " << a.max_length_m << " m system length";
    a.warnings.push_back(msg.str());
  }
  const auto report = hydro::assembly_buoyancy_report(a, {1.0, 1.0});
  for (auto & w : hydro::reference_mismatches(report)) {
    a.warnings.push_back(std::move(w));
  }
}

}  // namespace

std::string Issue::describe() const
{
  std::string out;
  if (line > 0) {
    out += "line " + std::to_string(line) + ": ";
  }
  if (!field.empty()) {
    out += field + ": ";
  }
  return out + message;
}

ManifestError::ManifestError(std::vector<Issue> issues)
: Error(code_for(issues), join_issues(issues)), issues_(std::move(issues))
{
}

AssemblyPtr load_assembly(std::string_view document)
{
  YAML::Node root;
  try {
    root = YAML::Load(std::string(document));
  } catch (const YAML::ParserException & e) {
    throw ManifestError({{"", e.mark.line + 1, e.msg, true}});
  }
  if (!root.IsDefined() || root.IsNull()) {
    throw ManifestError({{"segments", 0, "at least one segment is required", false}});
  }
  if (!root.IsMap()) {
    throw ManifestError({{"", line_of(root), "manifest must be a mapping", true}});
  }

  Reader reader;
  RobotAssembly assembly;
  try {
    assembly = read_document(reader, root);
  } catch (const YAML::Exception & e) {
    reader.issues.push_back({"", e.mark.line + 1, e.msg, true});
  }
  if (!reader.issues.empty()) {
    throw ManifestError(std::move(reader.issues));
  }
  assembly.warnings = std::move(reader.warnings);
  add_consistency_warnings(assembly);
  return std::make_shared<const RobotAssembly>(std::move(assembly));
}

AssemblyPtr load_assembly_file(const std::string & path)
{
  std::ifstream in(path);
  require(in.good(), ErrorCode::kIo, "cannot open manifest '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return load_assembly(text.str());
}

std::string default_assembly_path()
{
  if (const char * env = std::getenv("SNAKEFORGE_ASSEMBLY"); env != nullptr && *env != '\0') {
    return env;
  }
  return SNAKEFORGE_DEFAULT_ASSEMBLY;
}

}  // namespace snakeforge::manifest
