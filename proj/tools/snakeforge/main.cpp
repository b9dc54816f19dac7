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

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "api.hpp"
#include "serve.hpp"

namespace
{

using sfcli::Json;
using sfcli::check;
using sfcli::fetch;
using sfcli::quantity;

constexpr double kRadToDeg = 180.0 / std::numbers::pi;
constexpr double kPaPerPsi = 6894.757293168361;

std::string fmt(double v, int precision = 4)
{
  if (!std::isfinite(v)) {
    return v > 0 ? "inf" : (v < 0 ? "-inf" : "nan");
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", precision, v);
  return buf;
}

std::string num(const Json & j, int precision = 4)
{
  return j.is_null() ? std::string("-") : fmt(j.get<double>(), precision);
}

// Plain aligned text table.
class Table
{
public:
  explicit Table(std::vector<std::string> header) {rows_.push_back(std::move(header));}
  void add(std::vector<std::string> row) {rows_.push_back(std::move(row));}

  void print(std::ostream & out) const
  {
    std::vector<std::size_t> width(rows_.front().size(), 0);
    for (const auto & r : rows_) {
      for (std::size_t i = 0; i < r.size(); ++i) {
        width[i] = std::max(width[i], r[i].size());
      }
    }
    for (std::size_t k = 0; k < rows_.size(); ++k) {
      for (std::size_t i = 0; i < rows_[k].size(); ++i) {
        out << (i == 0 ? std::left : std::right) << std::setw(static_cast<int>(width[i])) << rows_[k][i]
            << (i + 1 < rows_[k].size() ? "  " : "\n");
      }
      if (k == 0) {
        std::size_t total = 0;
        for (auto w : width) {
          total += w + 2;
        }
        out << std::string(total - 2, '-') << '\n';
      }
    }
  }

private:
  std::vector<std::vector<std::string>> rows_;
};

// Writes to the named file, or stdout for "-".
class Output
{
public:
  explicit Output(const std::string & path)
  {
    if (path != "-") {
      file_.open(path, std::ios::trunc);
      if (!file_) {
        throw sfcli::ApiError(SF_ERR_IO, "cannot write '" + path + "'");
      }
    }
  }
  std::ostream & stream() {return file_.is_open() ? static_cast<std::ostream &>(file_) : std::cout;}

private:
  std::ofstream file_;
};

std::string csv_number(double v)
{
  std::ostringstream s;
  s << std::setprecision(10) << v;
  return s.str();
}

void print_warnings(const Json & warnings)
{
  for (const auto & w : warnings) {
    std::cerr << "warning: " << w.get<std::string>() << '\n';
  }
}

struct Context
{
  std::string assembly_path;
  sfcli::Assembly assembly;

  const sf_assembly * get()
  {
    if (!assembly) {
      assembly = sfcli::load_assembly(assembly_path);
    }
    return assembly.get();
  }
};

// ---- buoyancy-report ------------------------------------------------------

struct BuoyancyArgs
{
  double fill_front = 1.0;
  double fill_rear = 1.0;
  std::string csv;
};

void run_buoyancy(Context & ctx, const BuoyancyArgs & args)
{
  const auto doc = fetch([&](char ** out) {return sf_buoyancy_report(ctx.get(), args.fill_front, args.fill_rear, out);});
  if (!args.csv.empty()) {
    Output out(args.csv);
    out.stream() << "item,weight_n,buoyant_n,net_n,fraction,class\n";
    for (const auto & r : doc["rows"]) {
      out.stream() << r["item"].get<std::string>() << ',' << csv_number(r["weight_n"]) << ','
                   << csv_number(r["buoyant_n"]) << ',' << csv_number(r["net_n"]) << ','
                   << csv_number(r["fraction"]) << ',' << r["class"].get<std::string>() << '\n';
    }
    if (args.csv == "-") {
      print_warnings(doc["warnings"]);
      return;
    }
  }
  Table t({"item", "weight N", "buoyant N", "net N", "fraction", "class", "table N"});
  for (const auto & r : doc["rows"]) {
    t.add({r["item"], fmt(r["weight_n"], 3), fmt(r["buoyant_n"], 3), fmt(r["net_n"], 3), fmt(r["fraction"], 3),
      r["class"], num(r["reference_n"], 1)});
  }
  const auto & tot = doc["total"];
  t.add({"TOTAL", fmt(tot["weight_n"], 3), fmt(tot["buoyant_n"], 3), fmt(tot["net_n"], 3), "", tot["class"], ""});
  std::cout << "fill front " << fmt(args.fill_front, 2) << ", rear " << fmt(args.fill_rear, 2) << "\n\n";
  t.print(std::cout);
  std::cout << "\nstatic tilt moment " << fmt(doc["tilt_moment_nm"], 3) << " N*m (nose up positive)\n";
  print_warnings(doc["warnings"]);
}

// ---- bladder-design -------------------------------------------------------

void run_bladder(Context & ctx, const std::string & segment)
{
  const auto doc = fetch([&](char ** out) {
        return sf_bladder_design(ctx.get(), segment.empty() ? nullptr : segment.c_str(), out);
      });
  Table group({"item", "weight N", "buoyant N", "net N"});
  for (const auto & r : doc["group"]) {
    group.add({r["item"], fmt(r["weight_n"], 3), fmt(r["buoyant_n"], 3), fmt(r["net_n"], 3)});
  }
  group.print(std::cout);
  const auto & fp = doc["flat_pattern"];
  std::cout << "\nforce deficit        " << fmt(doc["deficit_n"], 3) << " N\n"
            << "setpoint (+margin)   " << fmt(doc["setpoint_n"], 3) << " N\n"
            << "buffered (+buffer)   " << fmt(doc["buffered_n"], 3) << " N\n"
            << "bladder volume       " << fmt(doc["bladder_volume_m3"], 7) << " m3\n"
            << "major diameter       " << fmt(doc["major_diameter_m"].get<double>() * 1000.0, 1) << " mm\n"
            << "minor diameter       " << fmt(doc["minor_diameter_m"].get<double>() * 1000.0, 1) << " mm\n"
            << "flat pattern outer   " << fmt(fp["outer_diameter_m"].get<double>() * 1000.0, 1) << " mm\n"
            << "flat pattern inner   " << fmt(fp["inner_diameter_m"].get<double>() * 1000.0, 1) << " mm\n"
            << "stock bladder        " << fmt(doc["stock_bladder"]["volume_m3"], 7) << " m3, net "
            << fmt(doc["stock_bladder"]["net_n"], 3) << " N\n";
}

// ---- pneumatic-fill -------------------------------------------------------

struct FillArgs
{
  std::string branch = "rear";
  std::string upstream;
  std::string dt = "0.01 s";
  double initial = 0.0;
  std::string target;
  std::string out;
};

void run_fill(Context & ctx, const FillArgs & args)
{
  const sf_branch branch = args.branch == "front" ? SF_BRANCH_FRONT : SF_BRANCH_REAR;
  const double upstream = args.upstream.empty() ? -1.0 : quantity(args.upstream, "pressure");
  const double dt = quantity(args.dt, "time");
  const auto doc = fetch([&](char ** out) {
        return sf_pneumatic_fill(ctx.get(), branch, upstream, dt, args.initial, out);
      });
  if (!args.out.empty()) {
    Output out(args.out);
    out.stream() << "t_s,volume_m3,pressure_pa,flow_m3_s\n";
    for (const auto & s : doc["samples"]) {
      out.stream() << csv_number(s[0]) << ',' << csv_number(s[1]) << ',' << csv_number(s[2]) << ','
                   << csv_number(s[3]) << '\n';
    }
    if (args.out == "-") {
      return;
    }
  }
  const double up = doc["upstream_pa"];
  std::cout << "branch " << doc["branch"].get<std::string>() << " (" << doc["bladders"].get<int>()
            << " bladders, " << fmt(doc["full_volume_m3"], 6) << " m3) from " << fmt(up / kPaPerPsi, 2)
            << " psi gauge\n";
  if (doc["completed"]) {
    const double t = doc["fill_time_s"];
    std::cout << "fill time " << fmt(t, 2) << " s\n";
    if (!args.target.empty()) {
      double err = 0.0;
      const double target = quantity(args.target, "time");
      check(sf_inflation_error(t, target, &err));
      std::cout << "vs target " << fmt(target, 1) << " s: " << (err >= 0 ? "+" : "") << fmt(err * 100.0, 1) << "%\n";
    }
  } else {
    std::cout << "did not fill (supply at or below the settle pressure?)\n";
  }
  const auto & hl = doc["head_loss"];
  std::cout << "tubing head loss at mean flow " << fmt(hl["head_m"], 1) << " m of air ("
            << fmt(hl["pressure_drop_pa"], 0) << " Pa)\n";
}

// ---- min-upstream ---------------------------------------------------------

struct UpstreamArgs
{
  std::string deadline;
  std::string settle;
  std::string dt = "0.01 s";
};

void run_min_upstream(Context & ctx, const UpstreamArgs & args)
{
  double deadline = -1.0;
  if (args.deadline == "inf" || args.deadline == "none") {
    deadline = std::numeric_limits<double>::infinity();
  } else if (!args.deadline.empty()) {
    deadline = quantity(args.deadline, "time");
  }
  const double settle = args.settle.empty() ? -1.0 : quantity(args.settle, "pressure");
  const double dt = quantity(args.dt, "time");
  const auto doc = fetch([&](char ** out) {return sf_min_upstream(ctx.get(), settle, deadline, dt, out);});
  std::cout << "deadline " << num(doc["deadline_s"], 1) << " s, settle " << fmt(doc["settle_pa"], 0) << " Pa\n"
            << "minimum regulator setting " << fmt(doc["pressure_psi"], 3) << " psi gauge ("
            << fmt(doc["pressure_pa"], 0) << " Pa), binding branch " << doc["binding_branch"].get<std::string>()
            << "\n\n";
  Table t({"branch", "fill s", "head loss m", "drop Pa"});
  for (const char * b : {"front", "rear"}) {
    t.add({b, num(doc["fill_time_s"][b], 2), fmt(doc["head_loss"][b]["head_m"], 1),
      fmt(doc["head_loss"][b]["pressure_drop_pa"], 0)});
  }
  t.print(std::cout);
}

// ---- gait / screw-output --------------------------------------------------

struct GaitArgs
{
  std::string mode = "idle";
  std::string turn_radius;
  std::string screw_speed;
  std::string ground_speed;
  double slip = 0.0;
  std::string pitch_amplitude;
  std::string yaw_amplitude;
  std::string frequency;
  std::string phase_lag;
  std::string joint_load;
  std::string t = "0 s";
};

void run_gait(Context & ctx, const GaitArgs & a)
{
  Json req{{"mode", a.mode}, {"t_s", quantity(a.t, "time")}};
  const auto put = [&](const char * key, const std::string & text, const char * dim) {
      if (!text.empty()) {
        req[key] = quantity(text, dim);
      }
    };
  put("turn_radius_m", a.turn_radius, "length");
  put("screw_speed_rad_s", a.screw_speed, "angular velocity");
  put("ground_speed_m_s", a.ground_speed, "velocity");
  put("pitch_amplitude_rad", a.pitch_amplitude, "angle");
  put("yaw_amplitude_rad", a.yaw_amplitude, "angle");
  put("frequency_hz", a.frequency, "frequency");
  put("phase_lag_rad", a.phase_lag, "angle");
  put("joint_load_kg", a.joint_load, "mass");
  if (a.slip != 0.0) {
    req["slip"] = a.slip;
  }
  const std::string text = req.dump();
  const auto doc = fetch([&](char ** out) {return sf_gait(ctx.get(), text.c_str(), out);});
  std::cout << "gait " << doc["mode"].get<std::string>() << " at t = " << fmt(doc["t_s"], 3) << " s\n";
  if (doc.contains("joint_angle_rad")) {
    std::cout << "common yaw angle " << fmt(doc["joint_angle_rad"].get<double>() * kRadToDeg, 2) << " deg\n";
  }
  std::cout << "tightest turn at the yaw limit " << fmt(doc["min_turn_radius_m"], 4) << " m\n\n";
  Table joints({"joint", "pitch deg", "yaw deg"});
  int i = 1;
  for (const auto & j : doc["joints"]) {
    joints.add({std::to_string(i++), fmt(j["pitch_rad"].get<double>() * kRadToDeg, 2),
      fmt(j["yaw_rad"].get<double>() * kRadToDeg, 2)});
  }
  joints.print(std::cout);
  std::cout << '\n';
  Table segs({"segment", "x m", "y m", "z m", "screw rad/s"});
  for (std::size_t k = 0; k < doc["midpoints_m"].size(); ++k) {
    const auto & m = doc["midpoints_m"][k];
    segs.add({std::to_string(k + 1), fmt(m[0], 4), fmt(m[1], 4), fmt(m[2], 4), num(doc["screw_speeds_rad_s"][k], 2)});
  }
  segs.print(std::cout);
}

void run_screw(Context & ctx, const std::string & torque, const std::string & speed)
{
  const double tq = quantity(torque, "torque");
  const double w = quantity(speed, "angular velocity");
  const auto doc = fetch([&](char ** out) {return sf_screw_output(ctx.get(), tq, w, out);});
  std::cout << "motor torque " << fmt(tq, 3) << " N*m at " << fmt(w, 2) << " rad/s\n"
            << "shell force   " << fmt(doc["tangential_force_n"], 2) << " N\n"
            << "shell torque  " << fmt(doc["shell_torque_nm"], 3) << " N*m\n"
            << "ideal torque  " << fmt(doc["ideal_torque_nm"], 3) << " N*m\n"
            << "efficiency    " << fmt(doc["efficiency"].get<double>() * 100.0, 2) << " %\n";
  if (doc["extrapolated"]) {
    std::cerr << "warning: speed outside the measured curve; extrapolated\n";
  }
  if (doc["torque_limited"]) {
    std::cerr << "warning: requested torque above the motor maximum; clamped\n";
  }
}

// ---- hysteresis-sweep -----------------------------------------------------

struct SweepArgs
{
  std::string load = "0 kg";
  std::string amplitude = "30 deg";
  int cycles = 3;
  std::string out;
};

void run_sweep(Context & ctx, const SweepArgs & a)
{
  const double load = quantity(a.load, "mass");
  const double amp = quantity(a.amplitude, "angle");
  const auto doc = fetch([&](char ** out) {return sf_hysteresis_sweep(ctx.get(), load, amp, a.cycles, out);});
  if (!a.out.empty()) {
    Output out(a.out);
    out.stream() << "command_deg,actual_deg\n";
    for (const auto & s : doc["samples"]) {
      out.stream() << csv_number(s[0].get<double>() * kRadToDeg) << ','
                   << csv_number(s[1].get<double>() * kRadToDeg) << '\n';
    }
    if (a.out == "-") {
      return;
    }
  }
  std::cout << "load " << fmt(load, 3) << " kg, amplitude " << fmt(amp * kRadToDeg, 1) << " deg, "
            << a.cycles << " cycles\n"
            << "model width    " << fmt(doc["model_width_rad"].get<double>() * kRadToDeg, 3) << " deg\n"
            << "measured width " << fmt(doc["measured_width_rad"].get<double>() * kRadToDeg, 3) << " deg\n"
            << "loop area      " << fmt(doc["loop_area_rad2"].get<double>() * kRadToDeg * kRadToDeg, 2)
            << " deg^2\n";
}

// ---- comms ----------------------------------------------------------------

struct CommsArgs
{
  int nodes = 0;
  std::string jitter;
  std::uint64_t seed = 0;
  double rate = 100.0;
  int node = 0;
  bool all_nodes = false;
  std::string duration = "10 s";
  std::string frames_out;
};

void run_comms(Context & ctx, const CommsArgs & a)
{
  Json req{{"seed", a.seed}, {"duration_s", quantity(a.duration, "time")}, {"frames", !a.frames_out.empty()}};
  if (a.nodes > 0) {
    req["nodes"] = a.nodes;
  }
  if (!a.jitter.empty()) {
    req["jitter_s"] = quantity(a.jitter, "time");
  }
  Json streams = Json::array();
  if (a.all_nodes) {
    // Every node polled once per period, staggered evenly across it.
    const int n = a.nodes > 0 ? a.nodes : 10;
    for (int k = 1; k <= n; ++k) {
      streams.push_back({{"node", k}, {"rate_hz", a.rate}, {"phase_s", (k - 1) / (a.rate * n)}});
    }
  } else {
    streams.push_back({{"node", a.node > 0 ? a.node : (a.nodes > 0 ? a.nodes : 10)}, {"rate_hz", a.rate}});
  }
  req["streams"] = streams;
  const std::string text = req.dump();
  const auto doc = fetch([&](char ** out) {return sf_comms_simulate(ctx.get(), text.c_str(), out);});

  std::cout << doc["nodes"].get<int>() << " nodes, jitter +/-" << fmt(doc["jitter_s"].get<double>() * 1e3, 3)
            << " ms, seed " << doc["seed"].get<std::uint64_t>() << ", " << fmt(doc["duration_s"], 2) << " s\n"
            << "max control rate " << fmt(doc["max_control_rate_hz"], 1) << " Hz\n\n";
  Table t({"node", "model ms", "frames", "mean ms", "min ms", "max ms", "queue ms", "missed"});
  for (const auto & s : doc["stats"]) {
    t.add({std::to_string(s["node"].get<int>()), fmt(s["model_rtt_s"].get<double>() * 1e3, 3),
      std::to_string(s["frames"].get<std::size_t>()), fmt(s["mean_rtt_s"].get<double>() * 1e3, 4),
      fmt(s["min_rtt_s"].get<double>() * 1e3, 3), fmt(s["max_rtt_s"].get<double>() * 1e3, 3),
      fmt(s["mean_queue_s"].get<double>() * 1e3, 3), std::to_string(s["missed_deadlines"].get<std::size_t>())});
  }
  t.print(std::cout);
  std::cout << "\noffered utilization " << fmt(doc["offered_utilization"], 3)
            << (doc["overloaded"].get<bool>() ? "  OVERLOADED: offered load exceeds bus capacity" : "") << '\n'
            << "missed deadlines " << doc["missed_deadlines"].get<std::size_t>() << ", worst queueing "
            << fmt(doc["max_queue_s"].get<double>() * 1e3, 3) << " ms\n";
  if (!a.frames_out.empty()) {
    Output out(a.frames_out);
    out.stream() << "node,enqueue_s,start_s,completion_s,rtt_s,deadline_missed\n";
    for (const auto & f : doc["frames"]) {
      const auto ns = [](const Json & v) {return csv_number(static_cast<double>(v.get<std::int64_t>()) / 1e9);};
      const auto rtt = f[3].get<std::int64_t>() - f[2].get<std::int64_t>();
      out.stream() << f[0].get<int>() << ',' << ns(f[1]) << ',' << ns(f[2]) << ',' << ns(f[3]) << ','
                   << csv_number(static_cast<double>(rtt) / 1e9) << ',' << (f[4].get<bool>() ? 1 : 0) << '\n';
    }
  }
}

// ---- simulate -------------------------------------------------------------

void print_summary(const Json & s)
{
  if (s.is_null()) {
    return;
  }
  std::cout << s["travel"].get<std::string>() << ": ";
  if (s["terminated"]) {
    std::cout << "duration " << fmt(s["duration_s"], 2) << " s (left at " << fmt(s["departure_s"], 2)
              << " s, arrived at " << fmt(s["arrival_s"], 2) << " s)\n";
  } else {
    std::cout << "did not finish: " << s["diagnosis"].get<std::string>() << '\n';
  }
  std::cout << "  mean acceleration over the window " << fmt(s["mean_acceleration_m_s2"], 4) << " m/s2 ("
            << fmt(s["window_start_s"], 2) << " to " << fmt(s["window_end_s"], 2) << " s)\n"
            << "  peak speed " << fmt(s["peak_speed_m_s"], 4) << " m/s\n";
}

int run_simulate(Context & ctx, const std::string & scenario, const std::string & dt_text, const std::string & out_path)
{
  const double dt = quantity(dt_text, "time");
  const auto doc = fetch([&](char ** out) {return sf_simulate_scenario(ctx.get(), scenario.c_str(), dt, out);});
  if (!out_path.empty()) {
    Output out(out_path);
    out.stream() << "t_s,depth_m,velocity_m_s,acceleration_m_s2,fill_front,fill_rear\n";
    for (const auto & r : doc["records"]) {
      for (std::size_t i = 0; i < r.size(); ++i) {
        out.stream() << csv_number(r[i]) << (i + 1 < r.size() ? ',' : '\n');
      }
    }
    if (out_path == "-") {
      return 0;
    }
  }
  const auto & last = doc["records"].back();
  std::cout << "scenario " << doc["name"].get<std::string>() << ", dt " << fmt(dt, 4) << " s, "
            << doc["records"].size() << " records\n"
            << "final: t " << fmt(last[0], 2) << " s, depth " << fmt(last[1], 4) << " m, velocity "
            << fmt(last[2], 4) << " m/s, fill " << fmt(last[4], 3) << "/" << fmt(last[5], 3) << '\n';
  print_summary(doc["summary"]);
  return 0;
}

// ---- calibrate ------------------------------------------------------------

void run_calibrate(Context & ctx)
{
  const auto doc = fetch([&](char ** out) {return sf_calibrate(ctx.get(), out);});
  std::cout << std::setprecision(9)
            << "# fitted constants for the manifest\n"
            << "pneumatics:\n  branches:\n";
  for (const char * b : {"front", "rear"}) {
    std::cout << "    " << b << ":\n"
              << "      flow_resistance: " << doc["flow_resistance"][b].get<double>() << " Pa*s/m3\n"
              << "      vent_resistance: " << doc["vent_resistance"][b].get<double>() << " Pa*s/m3\n";
  }
  std::cout << "hydro:\n"
            << "  drag_coefficient: " << doc["drag_coefficient"].get<double>() << " N*s2/m2\n"
            << "  added_mass: " << doc["added_mass_kg"].get<double>() << " kg\n\n";
  std::cout << "# " << doc["iterations"].get<int>() << " iterations, residual " << std::setprecision(3)
            << doc["residual"].get<double>() << (doc["converged"].get<bool>() ? "" : " (NOT CONVERGED)") << '\n';
  print_summary(doc["descent"]);
  print_summary(doc["ascent"]);
}

// ---- power-budget ---------------------------------------------------------

int run_power(Context & ctx, const std::vector<std::string> & draws)
{
  std::vector<double> w;
  for (const auto & d : draws) {
    w.push_back(quantity(d, "power"));
  }
  const auto doc = fetch([&](char ** out) {return sf_power_budget(ctx.get(), w.data(), w.size(), out);});
  Table t({"segment", "draw W", "limit W", "status"});
  for (const auto & s : doc["segments"]) {
    t.add({s["name"], fmt(s["draw_w"], 1), fmt(doc["segment_limit_w"], 1), s["pass"].get<bool>() ? "pass" : "FAIL"});
  }
  t.add({"system", fmt(doc["system_w"], 1), fmt(doc["system_limit_w"], 1),
    doc["system_pass"].get<bool>() ? "pass" : "FAIL"});
  t.print(std::cout);
  return doc["pass"].get<bool>() ? 0 : 3;
}

// ---- serve ----------------------------------------------------------------

int run_serve(Context & ctx, const std::string & bind, double rate, sfcli::ServeOptions opts, const std::string & replay)
{
  if (!replay.empty()) {
    const auto doc = fetch([&](char ** out) {return sf_replay_file(ctx.get(), replay.c_str(), out);});
    std::cout << "replayed " << doc["records"].get<std::size_t>() << " records, "
              << doc["commands"].get<std::size_t>() << " commands at " << fmt(doc["tick_rate_hz"], 2) << " Hz: ";
    if (doc["identical"]) {
      std::cout << "identical\n";
      return 0;
    }
    std::cout << doc["mismatches"].get<std::size_t>() << " records differ, first at index "
              << doc["first_mismatch"].get<long>() << '\n';
    return 4;
  }
  const auto colon = bind.rfind(':');
  if (colon == std::string::npos) {
    throw sfcli::ApiError(SF_ERR_INVALID_ARGUMENT, "--bind expects host:port");
  }
  opts.host = bind.substr(0, colon);
  opts.port = static_cast<unsigned short>(std::stoul(bind.substr(colon + 1)));
  opts.tick_rate_hz = rate;
  return sfcli::serve(ctx.get(), opts);
}

}  // namespace

int main(int argc, char ** argv)
{
  CLI::App app{"snakeforge: buoyancy, pneumatics, kinematics and dynamics toolkit for a screw-propelled snake robot"};
  app.require_subcommand(1);
  app.fallthrough();
  Context ctx;
  app.add_option("--assembly", ctx.assembly_path, "Robot manifest (YAML); defaults to the stock manifest");

  BuoyancyArgs buoy;
  auto * c_buoy = app.add_subcommand("buoyancy-report", "Net vertical force of every part and the whole robot");
  c_buoy->add_option("--fill-front", buoy.fill_front, "Front branch fill fraction")->check(CLI::Range(0.0, 1.0));
  c_buoy->add_option("--fill-rear", buoy.fill_rear, "Rear branch fill fraction")->check(CLI::Range(0.0, 1.0));
  c_buoy->add_option("--csv", buoy.csv, "Write rows as CSV to a file ('-' for stdout)");

  std::string bladder_segment;
  auto * c_bladder = app.add_subcommand("bladder-design", "Size a bladder and its flat pattern for one segment");
  c_bladder->add_option("--segment", bladder_segment, "Segment to size for (default: first with a foam shell)");

  FillArgs fill;
  auto * c_fill = app.add_subcommand("pneumatic-fill", "Fill transient of one bladder branch");
  c_fill->add_option("--branch", fill.branch, "front or rear")->check(CLI::IsMember({"front", "rear"}));
  c_fill->add_option("--upstream", fill.upstream, "Supply pressure, e.g. '2.9 psi' (default: regulator)");
  c_fill->add_option("--dt", fill.dt, "Integration step");
  c_fill->add_option("--initial-fill", fill.initial, "Starting fill fraction")->check(CLI::Range(0.0, 1.0));
  c_fill->add_option("--target", fill.target, "Report the error against this fill time, e.g. '60 s'");
  c_fill->add_option("--out", fill.out, "Write the trace as CSV ('-' for stdout)");

  UpstreamArgs up;
  auto * c_up = app.add_subcommand("min-upstream", "Lowest regulator setting that meets a fill deadline");
  c_up->add_option("--deadline", up.deadline, "Fill deadline, e.g. '60 s' or 'inf' (default: manifest)");
  c_up->add_option("--settle", up.settle, "Bladder settle pressure (default: manifest)");
  c_up->add_option("--dt", up.dt, "Integration step");

  GaitArgs gait;
  auto * c_gait = app.add_subcommand("gait", "Joint targets and screw speeds for a locomotion mode");
  c_gait->add_option("--mode", gait.mode, "idle, screwing, wheeling or sidewinding")
  ->check(CLI::IsMember({"idle", "screwing", "wheeling", "sidewinding"}));
  c_gait->add_option("--turn-radius", gait.turn_radius, "Screwing turn radius, e.g. '0.5 m'");
  c_gait->add_option("--screw-speed", gait.screw_speed, "Screw speed, e.g. '20 rad/s'");
  c_gait->add_option("--ground-speed", gait.ground_speed, "Wheeling ground speed, e.g. '0.3 m/s'");
  c_gait->add_option("--slip", gait.slip, "Wheeling slip fraction")->check(CLI::Range(0.0, 0.99));
  c_gait->add_option("--pitch-amplitude", gait.pitch_amplitude, "Sidewinding pitch amplitude, e.g. '20 deg'");
  c_gait->add_option("--yaw-amplitude", gait.yaw_amplitude, "Sidewinding yaw amplitude");
  c_gait->add_option("--frequency", gait.frequency, "Sidewinding frequency, e.g. '0.5 Hz'");
  c_gait->add_option("--phase-lag", gait.phase_lag, "Phase lag between joints, e.g. '45 deg'");
  c_gait->add_option("--joint-load", gait.joint_load, "Load on the joints (for hysteresis)");
  c_gait->add_option("--t", gait.t, "Evaluation time");

  std::string screw_torque = "1.5 N*m";
  std::string screw_speed = "50 rad/s";
  auto * c_screw = app.add_subcommand("screw-output", "Shell force and torque from the measured drivetrain curve");
  c_screw->add_option("--torque", screw_torque, "Motor torque");
  c_screw->add_option("--speed", screw_speed, "Commanded screw speed");

  SweepArgs sweep;
  auto * c_sweep = app.add_subcommand("hysteresis-sweep", "Command-vs-actual sweep through the joint play");
  c_sweep->add_option("--load", sweep.load, "Joint load, e.g. '6.25 lb'");
  c_sweep->add_option("--amplitude", sweep.amplitude, "Sweep amplitude");
  c_sweep->add_option("--cycles", sweep.cycles, "Number of cycles")->check(CLI::PositiveNumber);
  c_sweep->add_option("--out", sweep.out, "Write samples as CSV ('-' for stdout)");

  CommsArgs comms;
  auto * c_comms = app.add_subcommand("comms", "Round-trip latency model and bus event simulation");
  c_comms->add_option("--nodes", comms.nodes, "Nodes on the chain (default: manifest)");
  c_comms->add_option("--jitter", comms.jitter, "Uniform jitter bound, e.g. '0.1 ms'");
  c_comms->add_option("--seed", comms.seed, "Jitter seed");
  c_comms->add_option("--rate", comms.rate, "Control loop rate in Hz")->check(CLI::PositiveNumber);
  c_comms->add_option("--node", comms.node, "Addressed node (default: the farthest)");
  c_comms->add_flag("--all-nodes", comms.all_nodes, "Poll every node once per period");
  c_comms->add_option("--duration", comms.duration, "Simulated time");
  c_comms->add_option("--frames-out", comms.frames_out, "Write the per-frame log as CSV");

  std::string scenario;
  std::string sim_dt = "0.01 s";
  std::string sim_out;
  auto * c_sim = app.add_subcommand("simulate", "Run a sinking/rising scenario");
  c_sim->add_option("--scenario", scenario, "Scenario file (YAML)")->required();
  c_sim->add_option("--dt", sim_dt, "Time step, e.g. '0.01 s'");
  c_sim->add_option("--out", sim_out, "Write the trajectory as CSV ('-' for stdout)");

  std::string bind = "127.0.0.1:8765";
  double tick_rate = 20.0;
  std::string replay;
  sfcli::ServeOptions serve_opts;
  auto * c_serve = app.add_subcommand("serve", "Live simulation service for the operator console");
  c_serve->add_option("--bind", bind, "host:port to listen on (port 0 picks one)");
  c_serve->add_option("--tick-rate", tick_rate, "Simulation ticks per second")->check(CLI::Range(1.0, 100.0));
  c_serve->add_option("--record", serve_opts.record_path, "Log commands and telemetry (JSON Lines)");
  c_serve->add_option("--replay", replay, "Replay a log headless and compare; no server is started");
  c_serve->add_option("--max-ticks", serve_opts.max_ticks, "Close each session after this many ticks");
  c_serve->add_flag("--once", serve_opts.once, "Exit when the first session ends");

  auto * c_cal = app.add_subcommand("calibrate", "Fit pneumatic resistances, drag and added mass");

  std::vector<std::string> draws;
  auto * c_power = app.add_subcommand("power-budget", "Check per-segment and system power draw");
  c_power->add_option("--draw", draws, "Draw per segment, in order, e.g. --draw '200 W' '240 W' ...")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp & e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp & e) {
    return app.exit(e);
  } catch (const CLI::ParseError & e) {
    std::cerr << "error: " << e.what() << "\n\n" << app.help();
    return 2;
  }

  try {
    if (*c_buoy) {
      run_buoyancy(ctx, buoy);
    } else if (*c_bladder) {
      run_bladder(ctx, bladder_segment);
    } else if (*c_fill) {
      run_fill(ctx, fill);
    } else if (*c_up) {
      run_min_upstream(ctx, up);
    } else if (*c_gait) {
      run_gait(ctx, gait);
    } else if (*c_screw) {
      run_screw(ctx, screw_torque, screw_speed);
    } else if (*c_sweep) {
      run_sweep(ctx, sweep);
    } else if (*c_comms) {
      run_comms(ctx, comms);
    } else if (*c_sim) {
      return run_simulate(ctx, scenario, sim_dt, sim_out);
    } else if (*c_serve) {
      return run_serve(ctx, bind, tick_rate, serve_opts, replay);
    } else if (*c_cal) {
      run_calibrate(ctx);
    } else if (*c_power) {
      return run_power(ctx, draws);
    }
  } catch (const sfcli::ApiError & e) {
    std::cerr << Json{{"type", "error"}, {"code", sf_status_name(e.status())}, {"message", e.what()}}.dump() << '\n';
    return 1;
  } catch (const std::exception & e) {
    std::cerr << Json{{"type", "error"}, {"code", "internal"}, {"message", e.what()}}.dump() << '\n';
    return 1;
  }
  return 0;
}
