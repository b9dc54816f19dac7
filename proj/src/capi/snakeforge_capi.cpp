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

#include "snakeforge/snakeforge.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <limits>
#include <memory>
#include <new>
#include <string>
#include <vector>

#include "core/calibration.hpp"
#include "core/comms.hpp"
#include "core/error.hpp"
#include "core/hydrostatics.hpp"
#include "core/kinematics.hpp"
#include "core/manifest.hpp"
#include "core/pneumatics.hpp"
#include "core/power.hpp"
#include "core/replay.hpp"
#include "core/scenario.hpp"
#include "core/session.hpp"
#include "core/units.hpp"

using snakeforge::ErrorCode;
using snakeforge::require;
using Json = nlohmann::ordered_json;

struct sf_assembly
{
  snakeforge::AssemblyPtr ptr;
};

struct sf_session
{
  std::unique_ptr<snakeforge::service::Session> session;
  std::unique_ptr<std::ofstream> log;
  std::unique_ptr<snakeforge::service::Recorder> recorder;
};

namespace
{

thread_local std::string last_error;

template<typename F>
sf_status guarded(F && body) noexcept
{
  last_error.clear();
  try {
    body();
    return SF_OK;
  } catch (const snakeforge::Error & e) {
    last_error = e.what();
    return static_cast<sf_status>(e.code());
  } catch (const nlohmann::json::exception & e) {
    last_error = e.what();
    return SF_ERR_PARSE;
  } catch (const std::bad_alloc &) {
    last_error = "out of memory";
    return SF_ERR_INTERNAL;
  } catch (const std::exception & e) {
    last_error = e.what();
    return SF_ERR_INTERNAL;
  } catch (...) {
    last_error = "unknown failure";
    return SF_ERR_INTERNAL;
  }
}

void need(const void * p, const char * what)
{
  require(p != nullptr, ErrorCode::kInvalidArgument, std::string(what) + " must not be NULL");
}

const snakeforge::RobotAssembly & deref(const sf_assembly * a)
{
  need(a, "assembly");
  return *a->ptr;
}

void emit(const Json & doc, char ** out)
{
  need(out, "output pointer");
  const std::string text = doc.dump();
  char * copy = static_cast<char *>(std::malloc(text.size() + 1));
  if (copy == nullptr) {
    throw std::bad_alloc();
  }
  std::memcpy(copy, text.c_str(), text.size() + 1);
  *out = copy;
}

Json parse_request(const char * text)
{
  need(text, "request");
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error & e) {
    throw snakeforge::Error(ErrorCode::kParse, std::string("request is not valid JSON: ") + e.what());
  }
}

Json row_json(const snakeforge::hydro::BuoyancyReportRow & r)
{
  Json j{
    {"item", r.item},
    {"weight_n", r.weight_n},
    {"buoyant_n", r.buoyant_force_n},
    {"net_n", r.net_force_n},
    {"fraction", r.buoyancy_fraction},
    {"class", snakeforge::hydro::classification_name(r.classification)},
  };
  j["reference_n"] = r.reference_net_force_n ? Json(*r.reference_net_force_n) : Json(nullptr);
  return j;
}

Json summary_json(const snakeforge::dynamics::TrajectorySummary & s)
{
  return {
    {"travel", s.travel == snakeforge::dynamics::Travel::kDescent ? "descent" : "ascent"},
    {"terminated", s.terminated},
    {"diagnosis", s.diagnosis},
    {"duration_s", s.duration_s},
    {"departure_s", s.departure_s},
    {"arrival_s", s.arrival_s},
    {"mean_acceleration_m_s2", s.mean_acceleration_m_s2},
    {"window_start_s", s.window_start_s},
    {"window_end_s", s.window_end_s},
    {"peak_speed_m_s", s.peak_speed_m_s},
  };
}

Json loss_json(const snakeforge::pneumatics::BranchLoss & l)
{
  return {{"flow_m3_s", l.flow_m3_s}, {"head_m", l.head_m}, {"pressure_drop_pa", l.pressure_drop_pa}};
}


}  // namespace

extern "C" {

const char * sf_version(void)
{
  return "0.1.0";
}

const char * sf_status_name(sf_status status)
{
  if (status == SF_OK) {
    return "ok";
  }
  return snakeforge::error_code_name(static_cast<ErrorCode>(status));
}

const char * sf_last_error(void)
{
  return last_error.c_str();
}

void sf_string_free(char * text)
{
  std::free(text);
}

int sf_protocol_version(void)
{
  return snakeforge::service::kProtocolVersion;
}

sf_status sf_parse_quantity(const char * text, const char * dimension, double * si_out)
{
  return guarded([&] {
      need(text, "quantity text");
      need(dimension, "dimension");
      need(si_out, "output pointer");
      using snakeforge::units::Dimension;
      for (int d = static_cast<int>(Dimension::kDimensionless); d <= static_cast<int>(Dimension::kAnglePerMass); ++d) {
        const auto dim = static_cast<Dimension>(d);
        if (std::string_view(dimension) == snakeforge::units::dimension_name(dim)) {
          *si_out = snakeforge::units::parse_quantity(text, dim).si;
          return;
        }
      }
      throw snakeforge::Error(ErrorCode::kInvalidArgument, "unknown dimension '" + std::string(dimension) + "'");
    });
}

sf_status sf_assembly_load_file(const char * path, sf_assembly ** out)
{
  return guarded([&] {
      need(out, "output pointer");
      const std::string p = path != nullptr ? path : snakeforge::manifest::default_assembly_path();
      *out = new sf_assembly{snakeforge::manifest::load_assembly_file(p)};
    });
}

sf_status sf_assembly_load_string(const char * yaml, sf_assembly ** out)
{
  return guarded([&] {
      need(yaml, "manifest text");
      need(out, "output pointer");
      *out = new sf_assembly{snakeforge::manifest::load_assembly(yaml)};
    });
}

void sf_assembly_free(sf_assembly * assembly)
{
  delete assembly;
}

sf_status sf_default_assembly_path(char ** path_out)
{
  return guarded([&] {emit(Json(snakeforge::manifest::default_assembly_path()), path_out);});
}

sf_status sf_assembly_describe(const sf_assembly * assembly, char ** json_out)
{
  return guarded([&] {
      const auto & a = deref(assembly);
      Json segments = Json::array();
      for (const auto & s : a.segments) {
        Json shells = Json::array();
        for (const auto & sh : s.shells) {
          shells.push_back(sh.name);
        }
        segments.push_back({
          {"name", s.name}, {"mass_kg", s.mass_kg}, {"ballast_kg", s.ballast_kg},
          {"displaced_volume_m3", s.displaced_volume_m3}, {"shells", shells}, {"bladder_slots", s.bladder_slots},
          {"branch", snakeforge::branch_name(s.branch)}});
      }
      emit(
        Json{
          {"name", a.name},
          {"segments", segments},
          {"joint_count", a.joint_count()},
          {"total_mass_kg", a.total_mass_kg()},
          {"bladders", {{"front", a.bladder_count(snakeforge::Branch::kFront)},
            {"rear", a.bladder_count(snakeforge::Branch::kRear)}}},
          {"bladder_volume_m3", a.bladder.full_volume_m3()},
          {"internal_pressure_pa", a.internal_pressure_gauge_pa},
          {"warnings", a.warnings},
        },
        json_out);
    });
}

sf_status sf_buoyancy_report(const sf_assembly * assembly, double fill_front, double fill_rear, char ** json_out)
{
  return guarded([&] {
      const auto & a = deref(assembly);
      const auto report = snakeforge::hydro::assembly_buoyancy_report(a, {fill_front, fill_rear});
      Json rows = Json::array();
      for (const auto & r : report.rows) {
        rows.push_back(row_json(r));
      }
      emit(
        Json{
          {"fill_front", fill_front},
          {"fill_rear", fill_rear},
          {"rows", rows},
          {"total",
            {{"weight_n", report.total_weight_n}, {"buoyant_n", report.total_buoyant_force_n},
              {"net_n", report.total_net_force_n},
              {"class", snakeforge::hydro::classification_name(report.classification)}}},
          {"tilt_moment_nm", snakeforge::hydro::static_tilt_moment(a, {fill_front, fill_rear})},
          {"warnings", snakeforge::hydro::reference_mismatches(report)},
        },
        json_out);
    });
}

sf_status sf_bladder_design(const sf_assembly * assembly, const char * segment, char ** json_out)
{
  return guarded([&] {
      namespace hydro = snakeforge::hydro;
      const auto & a = deref(assembly);
      const snakeforge::SegmentSpec * basis = nullptr;
      for (const auto & s : a.segments) {
        const bool foam = std::any_of(s.shells.begin(), s.shells.end(), [](const auto & sh) {return sh.foam_filled;});
        if ((segment != nullptr && s.name == segment) || (segment == nullptr && foam)) {
          basis = &s;
          break;
        }
      }
      require(
        basis != nullptr, ErrorCode::kInvalidArgument,
        segment != nullptr ? "no segment named '" + std::string(segment) + "'" :
        std::string("no segment carries a foam-filled shell; name one explicitly"));

      std::vector<hydro::BuoyancyReportRow> rows;
      rows.push_back(hydro::make_row(basis->name, basis->total_mass_kg(), basis->displaced_volume_m3,
        a.fluid_density_kg_m3, a.g_m_s2));
      for (const auto & sh : basis->shells) {
        rows.push_back(hydro::make_row(sh.name, sh.mass_kg, sh.displaced_volume_m3, a.fluid_density_kg_m3, a.g_m_s2));
      }
      const auto sizing = hydro::size_bladder(
        rows, a.bladder.empty_mass_kg(), hydro::kDefaultMarginFraction, hydro::kDefaultSizingBuffer,
        a.fluid_density_kg_m3, a.g_m_s2);
      const double major = a.bladder.major_diameter_m();
      const double minor = hydro::solve_bladder_geometry(sizing.bladder_volume_m3, major, a.max_diameter_m);
      const auto pattern = hydro::flat_pattern(major, minor, a.bladder.seam_allowance_m);
      Json group = Json::array();
      for (const auto & r : rows) {
        group.push_back(row_json(r));
      }
      emit(
        Json{
          {"segment", basis->name},
          {"group", group},
          {"deficit_n", sizing.deficit_n},
          {"setpoint_n", sizing.setpoint_n},
          {"buffered_n", sizing.buffered_n},
          {"bladder_volume_m3", sizing.bladder_volume_m3},
          {"major_diameter_m", major},
          {"minor_diameter_m", minor},
          {"flat_pattern",
            {{"outer_diameter_m", pattern.outer_textile_diameter_m},
              {"inner_diameter_m", pattern.inner_textile_diameter_m},
              {"cut_outer_diameter_m", pattern.cut_outer_diameter_m()},
              {"cut_inner_diameter_m", pattern.cut_inner_diameter_m()}}},
          {"stock_bladder",
            {{"minor_diameter_m", a.bladder.minor_diameter_m()}, {"volume_m3", a.bladder.full_volume_m3()},
              {"net_n", hydro::net_vertical_force(a.bladder.empty_mass_kg(), a.bladder.full_volume_m3(),
                a.fluid_density_kg_m3, a.g_m_s2)}}},
        },
        json_out);
    });
}

sf_status sf_torus_volume(double major_diameter_m, double minor_diameter_m, double * volume_out)
{
  return guarded([&] {
      need(volume_out, "output pointer");
      *volume_out = snakeforge::hydro::torus_volume(minor_diameter_m, major_diameter_m);
    });
}

sf_status sf_flat_pattern(double major_diameter_m, double minor_diameter_m, double * outer_out, double * inner_out)
{
  return guarded([&] {
      need(outer_out, "output pointer");
      need(inner_out, "output pointer");
      const auto p = snakeforge::hydro::flat_pattern(major_diameter_m, minor_diameter_m);
      *outer_out = p.outer_textile_diameter_m;
      *inner_out = p.inner_textile_diameter_m;
    });
}

sf_status sf_torus_from_pattern(double outer_m, double inner_m, double * major_diameter_out, double * minor_diameter_out)
{
  return guarded([&] {
      need(major_diameter_out, "output pointer");
      need(minor_diameter_out, "output pointer");
      snakeforge::hydro::FlatPattern p;
      p.outer_textile_diameter_m = outer_m;
      p.inner_textile_diameter_m = inner_m;
      const auto t = snakeforge::hydro::torus_from_pattern(p);
      *major_diameter_out = t.major_diameter_m;
      *minor_diameter_out = t.minor_diameter_m;
    });
}

sf_status sf_pneumatic_fill(
  const sf_assembly * assembly, sf_branch branch, double upstream_pa, double dt_s, double initial_fraction,
  char ** json_out)
{
  return guarded([&] {
      namespace pn = snakeforge::pneumatics;
      const auto & a = deref(assembly);
      require(branch == SF_BRANCH_FRONT || branch == SF_BRANCH_REAR, ErrorCode::kInvalidArgument, "unknown branch");
      const auto b = static_cast<snakeforge::Branch>(branch);
      const double upstream = upstream_pa < 0.0 ? a.pneumatics.regulator_gauge_pa : upstream_pa;
      require(
        upstream <= a.pneumatics.compressor_limit_gauge_pa, ErrorCode::kOutOfRange,
        "upstream pressure exceeds the compressor limit");
      pn::FillOptions opts;
      opts.initial_volume_fraction = initial_fraction;
      const auto trace = pn::simulate_fill(a, b, upstream, dt_s, opts);
      Json samples = Json::array();
      for (const auto & s : trace.samples) {
        samples.push_back(Json::array({s.t_s, s.volume_m3, s.pressure_pa, s.flow_m3_s}));
      }
      const auto model = pn::BranchModel::from_assembly(a, b);
      const double mean_flow = trace.completed && trace.fill_time_s > 0.0 ? model.full_volume_m3 / trace.fill_time_s : 0.0;
      emit(
        Json{
          {"branch", snakeforge::branch_name(b)},
          {"upstream_pa", upstream},
          {"bladders", a.bladder_count(b)},
          {"full_volume_m3", trace.full_volume_m3},
          {"completed", trace.completed},
          {"fill_time_s", trace.completed ? Json(trace.fill_time_s) : Json(nullptr)},
          {"columns", {"t_s", "volume_m3", "pressure_pa", "flow_m3_s"}},
          {"samples", samples},
          {"head_loss", loss_json(pn::branch_head_loss(
            a.pneumatics.branch(b).tubes, mean_flow, a.pneumatics.air_density_kg_m3, a.g_m_s2))},
        },
        json_out);
    });
}

sf_status sf_min_upstream(
  const sf_assembly * assembly, double settle_pa, double deadline_s, double dt_s, char ** json_out)
{
  return guarded([&] {
      const auto & a = deref(assembly);
      const double settle = settle_pa < 0.0 ? a.bladder.settle_pressure_gauge_pa() : settle_pa;
      const double deadline = deadline_s <= 0.0 ? a.pneumatics.fill_deadline_s : deadline_s;
      const auto r = snakeforge::pneumatics::min_upstream_pressure(a, settle, deadline, dt_s);
      const auto time = [](double t) {return std::isfinite(t) ? Json(t) : Json(nullptr);};
      emit(
        Json{
          {"settle_pa", settle},
          {"deadline_s", std::isfinite(deadline) ? Json(deadline) : Json(nullptr)},
          {"pressure_pa", r.pressure_pa},
          {"pressure_psi", r.pressure_psi},
          {"binding_branch", snakeforge::branch_name(r.binding_branch)},
          {"fill_time_s", {{"front", time(r.fill_time_s[0])}, {"rear", time(r.fill_time_s[1])}}},
          {"head_loss", {{"front", loss_json(r.head_loss[0])}, {"rear", loss_json(r.head_loss[1])}}},
        },
        json_out);
    });
}

sf_status sf_inflation_error(double fill_time_s, double target_s, double * fraction_out)
{
  return guarded([&] {
      need(fraction_out, "output pointer");
      *fraction_out = snakeforge::pneumatics::inflation_error_vs_target(fill_time_s, target_s);
    });
}

sf_status sf_gait(const sf_assembly * assembly, const char * request_json, char ** json_out)
{
  return guarded([&] {
      namespace kin = snakeforge::kinematics;
      const auto & a = deref(assembly);
      Json req = parse_request(request_json);
      require(req.is_object(), ErrorCode::kProtocol, "gait request must be a JSON object");
      double t = 0.0;
      if (req.contains("t_s")) {
        t = req.at("t_s").get<double>();
        req.erase("t_s");
      }
      req["type"] = "command";
      req["action"] = "gait";
      const auto parsed = snakeforge::service::parse_command(req, a);
      const auto & settings = std::get<snakeforge::service::GaitSettings>(parsed.command);
      const auto cmd = snakeforge::service::evaluate_gait(settings, a, t);
      const auto frames = kin::forward_kinematics(cmd.joints, a.segment_length_m);
      const auto mids = kin::segment_midpoints(frames);
      Json joints = Json::array();
      for (const auto & j : cmd.joints) {
        joints.push_back({{"pitch_rad", j.pitch_rad}, {"yaw_rad", j.yaw_rad}});
      }
      Json midpoints = Json::array();
      for (const auto & m : mids) {
        midpoints.push_back(Json::array({m.x(), m.y(), m.z()}));
      }
      Json out{
        {"mode", kin::gait_mode_name(cmd.mode)},
        {"t_s", t},
        {"joints", joints},
        {"screw_speeds_rad_s", cmd.screw_speeds_rad_s},
        {"midpoints_m", midpoints},
      };
      if (settings.mode == kin::GaitMode::kScrewing && std::isfinite(settings.turn_radius_m)) {
        out["joint_angle_rad"] = kin::angle_for_arc_radius(settings.turn_radius_m, a.segment_length_m);
      }
      out["min_turn_radius_m"] = kin::arc_radius_for_angle(a.joint.yaw_limit_rad, a.segment_length_m);
      emit(out, json_out);
    });
}

sf_status sf_hysteresis_sweep(
  const sf_assembly * assembly, double load_kg, double amplitude_rad, int cycles, char ** json_out)
{
  return guarded([&] {
      namespace kin = snakeforge::kinematics;
      const auto & a = deref(assembly);
      require(load_kg >= 0.0, ErrorCode::kInvalidArgument, "load must be non-negative");
      require(cycles >= 1, ErrorCode::kInvalidArgument, "need at least one cycle");
      require(
        amplitude_rad > 0.0 && amplitude_rad <= std::max(a.joint.pitch_limit_rad, a.joint.yaw_limit_rad),
        ErrorCode::kOutOfRange, "sweep amplitude must be positive and within the joint limit");
      const auto model = a.joint.hysteresis;
      const auto sweep = kin::hysteresis_sweep(load_kg, model, amplitude_rad, cycles);
      Json samples = Json::array();
      for (const auto & s : sweep) {
        samples.push_back(Json::array({s.command_rad, s.actual_rad}));
      }
      emit(
        Json{
          {"load_kg", load_kg},
          {"amplitude_rad", amplitude_rad},
          {"model_width_rad", model.width_rad(load_kg)},
          {"measured_width_rad", kin::measure_loop_width(sweep)},
          {"loop_area_rad2", kin::measure_loop_area(sweep)},
          {"columns", {"command_rad", "actual_rad"}},
          {"samples", samples},
        },
        json_out);
    });
}

sf_status sf_screw_output(const sf_assembly * assembly, double motor_torque_nm, double speed_rad_s, char ** json_out)
{
  return guarded([&] {
      const auto & a = deref(assembly);
      const auto o = snakeforge::kinematics::screw_output(motor_torque_nm, speed_rad_s, a.drivetrain);
      emit(
        Json{
          {"motor_torque_nm", motor_torque_nm},
          {"speed_rad_s", speed_rad_s},
          {"tangential_force_n", o.tangential_force_n},
          {"shell_torque_nm", o.shell_torque_nm},
          {"ideal_torque_nm", o.ideal_torque_nm},
          {"efficiency", o.efficiency},
          {"extrapolated", o.extrapolated},
          {"torque_limited", o.torque_limited},
        },
        json_out);
    });
}

sf_status sf_power_budget(
  const sf_assembly * assembly, const double * per_segment_draw_w, size_t count, char ** json_out)
{
  return guarded([&] {
      const auto & a = deref(assembly);
      require(count == 0 || per_segment_draw_w != nullptr, ErrorCode::kInvalidArgument, "draws must not be NULL");
      const auto r = snakeforge::power_budget_check(a, std::span<const double>(per_segment_draw_w, count));
      Json segs = Json::array();
      for (const auto & s : r.segments) {
        segs.push_back({{"index", s.index}, {"name", s.name}, {"draw_w", s.draw_w}, {"pass", s.pass}});
      }
      emit(
        Json{
          {"segments", segs},
          {"segment_limit_w", r.segment_limit_w},
          {"system_w", r.system_w},
          {"system_limit_w", r.system_limit_w},
          {"system_pass", r.system_pass},
          {"pass", r.pass},
        },
        json_out);
    });
}

sf_status sf_round_trip_latency(const sf_assembly * assembly, int node, double * seconds_out)
{
  return guarded([&] {
      need(seconds_out, "output pointer");
      const auto topo = snakeforge::comms::BusTopology::from_spec(deref(assembly).comms);
      *seconds_out = snakeforge::comms::round_trip_latency(topo, node);
    });
}

sf_status sf_max_control_rate(const sf_assembly * assembly, double * hz_out)
{
  return guarded([&] {
      need(hz_out, "output pointer");
      *hz_out = snakeforge::comms::max_control_rate(snakeforge::comms::BusTopology::from_spec(deref(assembly).comms));
    });
}

sf_status sf_comms_simulate(const sf_assembly * assembly, const char * request_json, char ** json_out)
{
  return guarded([&] {
      namespace comms = snakeforge::comms;
      const Json req = parse_request(request_json);
      require(req.is_object(), ErrorCode::kProtocol, "comms request must be a JSON object");
      snakeforge::CommsSpec spec = assembly != nullptr ? assembly->ptr->comms : snakeforge::CommsSpec{};
      spec.node_count = req.value("nodes", spec.node_count);
      spec.first_hop_rtt_s = req.value("first_hop_rtt_s", spec.first_hop_rtt_s);
      spec.per_node_rtt_increment_s = req.value("per_node_increment_s", spec.per_node_rtt_increment_s);
      spec.jitter_bound_s = req.value("jitter_s", spec.jitter_bound_s);
      const auto topo = comms::BusTopology::from_spec(spec);
      const auto seed = req.value("seed", std::uint64_t{0});
      const double duration = req.value("duration_s", 10.0);

      std::vector<comms::CommandStream> streams;
      if (req.contains("streams")) {
        for (const auto & s : req.at("streams")) {
          comms::CommandStream cs;
          cs.node = s.value("node", 1);
          cs.rate_hz = s.value("rate_hz", 100.0);
          cs.phase_s = s.value("phase_s", 0.0);
          cs.payload_bytes = s.value("payload_bytes", 8);
          streams.push_back(cs);
        }
      }
      const auto result = comms::run_event_simulation(topo, streams, duration, seed);

      Json latency = Json::array();
      for (int n = 1; n <= topo.node_count; ++n) {
        latency.push_back({{"node", n}, {"rtt_s", comms::round_trip_latency(topo, n)}});
      }
      Json nodes = Json::array();
      for (const auto & n : result.nodes) {
        nodes.push_back({
          {"node", n.node}, {"frames", n.frames}, {"model_rtt_s", comms::round_trip_latency(topo, n.node)},
          {"mean_rtt_s", n.mean_rtt_s}, {"min_rtt_s", n.min_rtt_s}, {"max_rtt_s", n.max_rtt_s},
          {"mean_queue_s", n.mean_queue_s}, {"missed_deadlines", n.missed_deadlines}});
      }
      Json out{
        {"nodes", topo.node_count},
        {"jitter_s", static_cast<double>(topo.jitter_bound_ns) / 1e9},
        {"seed", seed},
        {"duration_s", duration},
        {"max_control_rate_hz", comms::max_control_rate(topo)},
        {"latency", latency},
        {"stats", nodes},
        {"frame_count", result.frames.size()},
        {"offered_utilization", result.offered_utilization},
        {"overloaded", result.overloaded},
        {"missed_deadlines", result.missed_deadlines},
        {"max_queue_s", static_cast<double>(result.max_queue_ns) / 1e9},
      };
      if (req.value("frames", false)) {
        Json frames = Json::array();
        for (const auto & f : result.frames) {
          frames.push_back(Json::array({f.node, f.enqueue_ns, f.start_ns, f.completion_ns, f.deadline_missed}));
        }
        out["frame_columns"] = {"node", "enqueue_ns", "start_ns", "completion_ns", "deadline_missed"};
        out["frames"] = frames;
      }
      emit(out, json_out);
    });
}

sf_status sf_simulate_scenario(const sf_assembly * assembly, const char * scenario_path, double dt_s, char ** json_out)
{
  return guarded([&] {
      need(assembly, "assembly");
      need(scenario_path, "scenario path");
      const auto sc = snakeforge::scenario::load_scenario_file(scenario_path);
      const auto run = snakeforge::scenario::run(assembly->ptr, sc, dt_s);
      Json records = Json::array();
      for (const auto & r : run.records) {
        records.push_back(Json::array({r.t_s, r.depth_m, r.velocity_m_s, r.acceleration_m_s2, r.fill[0], r.fill[1]}));
      }
      Json out{
        {"name", sc.name},
        {"dt_s", dt_s},
        {"columns", {"t_s", "depth_m", "velocity_m_s", "acceleration_m_s2", "fill_front", "fill_rear"}},
        {"records", records},
      };
      out["summary"] = run.summary ? summary_json(*run.summary) : Json(nullptr);
      emit(out, json_out);
    });
}

sf_status sf_calibrate(const sf_assembly * assembly, char ** json_out)
{
  return guarded([&] {
      const auto & a = deref(assembly);
      const auto r = snakeforge::calibration::calibrate(a);
      emit(
        Json{
          {"flow_resistance", {{"front", r.flow_resistance[0]}, {"rear", r.flow_resistance[1]}}},
          {"vent_resistance", {{"front", r.vent_resistance[0]}, {"rear", r.vent_resistance[1]}}},
          {"drag_coefficient", r.drag_coefficient},
          {"added_mass_kg", r.added_mass_kg},
          {"iterations", r.iterations},
          {"residual", r.residual},
          {"converged", r.converged},
          {"descent", summary_json(r.descent)},
          {"ascent", summary_json(r.ascent)},
        },
        json_out);
    });
}

sf_status sf_session_create(
  const sf_assembly * assembly, double tick_rate_hz, const char * initial_json, sf_session ** out)
{
  return guarded([&] {
      need(assembly, "assembly");
      need(out, "output pointer");
      snakeforge::service::InitialState init;
      if (initial_json != nullptr) {
        const Json j = parse_request(initial_json);
        init.depth_m = j.value("depth_m", init.depth_m);
        init.velocity_m_s = j.value("velocity_m_s", init.velocity_m_s);
        init.fill = {j.value("fill_front", init.fill[0]), j.value("fill_rear", init.fill[1])};
      }
      auto s = std::make_unique<sf_session>();
      s->session = std::make_unique<snakeforge::service::Session>(assembly->ptr, tick_rate_hz, init);
      *out = s.release();
    });
}

void sf_session_free(sf_session * session)
{
  delete session;
}

sf_status sf_session_record(sf_session * session, const char * path)
{
  return guarded([&] {
      need(session, "session");
      need(path, "log path");
      require(session->recorder == nullptr, ErrorCode::kInvalidArgument, "session is already recording");
      require(session->session->ticks() == 0, ErrorCode::kInvalidArgument, "recording must start before the first tick");
      auto log = std::make_unique<std::ofstream>(path, std::ios::trunc);
      require(log->good(), ErrorCode::kIo, "cannot open log '" + std::string(path) + "'");
      session->recorder = std::make_unique<snakeforge::service::Recorder>(
        *log, session->session->tick_rate_hz(), session->session->initial_state());
      session->recorder->attach(*session->session);
      session->log = std::move(log);
    });
}

sf_status sf_session_submit(sf_session * session, const char * message_json)
{
  return guarded([&] {
      need(session, "session");
      Json message;
      need(message_json, "message");
      try {
        message = Json::parse(message_json);
      } catch (const nlohmann::json::parse_error & e) {
        throw snakeforge::Error(ErrorCode::kProtocol, std::string("message is not valid JSON: ") + e.what());
      }
      session->session->submit(message);
    });
}

sf_status sf_session_tick(sf_session * session, char ** telemetry_out)
{
  return guarded([&] {
      need(session, "session");
      const std::string line = snakeforge::service::serialize(session->session->tick());
      if (session->recorder) {
        session->recorder->telemetry(line);
      }
      if (telemetry_out != nullptr) {
        char * copy = static_cast<char *>(std::malloc(line.size() + 1));
        if (copy == nullptr) {
          throw std::bad_alloc();
        }
        std::memcpy(copy, line.c_str(), line.size() + 1);
        *telemetry_out = copy;
      }
    });
}

sf_status sf_session_snapshot(const sf_session * session, char ** telemetry_out)
{
  return guarded([&] {
      need(session, "session");
      emit(snakeforge::service::to_json(session->session->snapshot()), telemetry_out);
    });
}

sf_status sf_session_tick_rate(const sf_session * session, double * hz_out)
{
  return guarded([&] {
      need(session, "session");
      need(hz_out, "output pointer");
      *hz_out = session->session->tick_rate_hz();
    });
}

sf_status sf_replay_file(const sf_assembly * assembly, const char * log_path, char ** json_out)
{
  return guarded([&] {
      need(assembly, "assembly");
      need(log_path, "log path");
      std::ifstream in(log_path);
      require(in.good(), ErrorCode::kIo, "cannot open log '" + std::string(log_path) + "'");
      const auto log = snakeforge::service::read_log(in);
      const auto result = snakeforge::service::replay(assembly->ptr, log);
      emit(
        Json{
          {"records", result.telemetry.size()},
          {"commands", log.commands.size()},
          {"tick_rate_hz", log.tick_rate_hz},
          {"identical", result.identical()},
          {"mismatches", result.mismatches},
          {"first_mismatch", result.first_mismatch},
        },
        json_out);
    });
}

}  // extern "C"
