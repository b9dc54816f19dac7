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

// Acceptance harness: one PASS/FAIL line per headline criterion. Exit status
// is the number of failures.

#include <boost/asio/connect.hpp>
#include <boost/asio/ip/tcp.hpp>
#include <boost/beast/core.hpp>
#include <boost/beast/websocket.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "core/calibration.hpp"
#include "core/comms.hpp"
#include "core/dynamics.hpp"
#include "core/error.hpp"
#include "core/hydrostatics.hpp"
#include "core/kinematics.hpp"
#include "core/manifest.hpp"
#include "core/pneumatics.hpp"
#include "core/replay.hpp"

namespace
{

using namespace snakeforge;
constexpr double kPi = std::numbers::pi;

// Collects sub-check results for one criterion.
class Criterion
{
public:
  explicit Criterion(std::string name) : name_(std::move(name)), start_(std::chrono::steady_clock::now()) {}

  void check(bool ok, const std::string & what)
  {
    if (!ok) {
      pass_ = false;
      failures_.push_back(what);
    }
  }

  void near(double value, double target, double tol, const std::string & what)
  {
    std::ostringstream s;
    s << what << " = " << value << " (want " << target << " +/- " << tol << ")";
    check(std::abs(value - target) <= tol, s.str());
    notes_.push_back(s.str());
  }

  void note(const std::string & text) {notes_.push_back(text);}

  void runtime_under(double seconds)
  {
    const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    std::ostringstream s;
    s << "runtime " << elapsed << " s (limit " << seconds << " s)";
    check(elapsed < seconds, s.str());
    notes_.push_back(s.str());
  }

  bool report() const
  {
    std::cout << (pass_ ? "PASS" : "FAIL") << "  " << name_ << '\n';
    for (const auto & n : notes_) {
      std::cout << "        " << n << '\n';
    }
    for (const auto & f : failures_) {
      std::cout << "      ! " << f << '\n';
    }
    return pass_;
  }

private:
  std::string name_;
  std::chrono::steady_clock::time_point start_;
  bool pass_ = true;
  std::vector<std::string> notes_;
  std::vector<std::string> failures_;
};

template<typename Fn>
bool run(const std::string & name, Fn body)
{
  Criterion c(name);
  try {
    body(c);
  } catch (const std::exception & e) {
    c.check(false, std::string("threw: ") + e.what());
  }
  return c.report();
}

AssemblyPtr load_stock()
{
  return manifest::load_assembly_file(std::string(SNAKEFORGE_TEST_DATA_DIR) + "/arcsnake_v2.yaml");
}

bool within_fraction(double value, double target, double fraction)
{
  return std::abs(value - target) <= fraction * std::abs(target);
}

void table_rows(Criterion & c)
{
  const auto assembly = load_stock();
  const auto report = hydro::assembly_buoyancy_report(*assembly, {1.0, 1.0});
  const auto row = [&](const std::string & item) -> const hydro::BuoyancyReportRow & {
      for (const auto & r : report.rows) {
        if (r.item == item) {
          return r;
        }
      }
      throw std::runtime_error("missing row " + item);
    };
  const std::vector<std::pair<std::string, double>> expected{
    {"middle-1", -19.4}, {"tail", -20.6}, {"middle-1/marine", 9.0}, {"front/regular", 3.7},
    {"front/bladder 1", 13.8}};
  for (const auto & [item, printed] : expected) {
    const double net = row(item).net_force_n;
    std::ostringstream s;
    s << item << " net " << net << " N vs " << printed << " N";
    c.check(within_fraction(net, printed, 0.02), s.str() + " outside 2%");
    c.note(s.str());
  }
  const auto warnings = hydro::reference_mismatches(report);
  const bool front_flagged = warnings.size() == 1 && warnings[0].find("front") != std::string::npos;
  c.check(front_flagged, "front-row inconsistency not warned");
  c.note(front_flagged ? "front row warned: " + warnings[0] : "front row not warned");
  c.runtime_under(1.0);
}

void bladder_chain(Criterion & c)
{
  const auto assembly = load_stock();
  const auto & seg = assembly->segments[1];
  std::vector<hydro::BuoyancyReportRow> rows{
    hydro::make_row(seg.name, seg.total_mass_kg(), seg.displaced_volume_m3)};
  for (const auto & shell : seg.shells) {
    rows.push_back(hydro::make_row(shell.name, shell.mass_kg, shell.displaced_volume_m3));
  }
  const auto s = hydro::size_bladder(rows, assembly->bladder.empty_mass_kg());
  c.near(s.deficit_n, 10.59, 0.01, "deficit N");
  c.near(s.setpoint_n, 13.1, 0.3, "setpoint N");
  c.near(s.buffered_n, 13.8, 0.2, "buffered N");
  c.near(s.bladder_volume_m3, 0.00143, 0.00143 * 0.01, "volume m3");
}

void flat_pattern(Criterion & c)
{
  std::mt19937_64 rng(12345);
  std::uniform_real_distribution<double> major(0.01, 2.0);
  std::uniform_real_distribution<double> fraction(0.0, 0.999);
  double worst = 0.0;
  for (int k = 0; k < 10000; ++k) {
    const double big = major(rng);
    const double minor = fraction(rng) * big * 2.0 / kPi;
    const auto back = hydro::torus_from_pattern(hydro::flat_pattern(big, minor));
    worst = std::max(worst, std::abs(back.major_diameter_m - big) / big);
    worst = std::max(worst, std::abs(back.minor_diameter_m - minor) / big);
  }
  std::ostringstream s;
  s << "worst round-trip error over 10000 geometries, relative to the major diameter: " << worst;
  c.check(worst <= 1e-12, s.str());
  c.note(s.str());

  int rejected = 0;
  int accepted_inside = 0;
  const std::vector<double> majors{0.05, 0.16, 0.5, 1.0, 2.5};
  for (double big : majors) {
    const double minor = big * 2.0 / kPi;
    try {
      hydro::flat_pattern(big, minor);
    } catch (const Error & e) {
      rejected += e.code() == ErrorCode::kInfeasible;
    }
    try {
      hydro::flat_pattern(big, minor * (1.0 - 1e-9));
      ++accepted_inside;
    } catch (const Error &) {
    }
  }
  c.check(rejected == static_cast<int>(majors.size()), "boundary (pi/2) minor = major not rejected");
  c.check(accepted_inside == static_cast<int>(majors.size()), "geometry just inside the boundary rejected");
  c.note("boundary rejected " + std::to_string(rejected) + "/" + std::to_string(majors.size()));
}

void pneumatics_fill(Criterion & c)
{
  const auto assembly = load_stock();
  const double p = units::psi_to_pa(2.9);
  const auto rear = pneumatics::simulate_fill(*assembly, Branch::kRear, p, 0.01);
  const auto front = pneumatics::simulate_fill(*assembly, Branch::kFront, p, 0.01);
  c.check(rear.completed && front.completed, "fill did not complete");
  c.near(rear.fill_time_s, 68.0, 2.0, "rear fill s");
  c.near(front.fill_time_s, 70.0, 2.0, "front fill s");
  c.near(pneumatics::inflation_error_vs_target(68.0, 60.0) * 100.0, 13.3, 0.1, "error vs 60 s target %");
  const auto up = pneumatics::min_upstream_pressure(*assembly, assembly->bladder.settle_pressure_gauge_pa(), 70.0);
  c.near(up.pressure_psi, 2.9, 0.2, "min upstream psi (70 s deadline)");
  c.runtime_under(5.0);
}

void vertical(Criterion & c)
{
  const auto assembly = load_stock();
  const auto runs = calibration::evaluate(*assembly, 0.01);
  c.check(runs[0].terminated && runs[1].terminated, "a run did not reach its boundary");
  c.near(runs[0].mean_acceleration_m_s2, 0.045, 0.045 * 0.15, "descent mean acceleration m/s2");
  c.near(runs[1].mean_acceleration_m_s2, 0.027, 0.027 * 0.15, "ascent mean acceleration m/s2");
  c.near(runs[0].duration_s, 9.5, 1.5, "descent duration s");

  // Constant force, no drag: depth must follow F t^2 / 2m.
  dynamics::VerticalBody body;
  body.buoyancy.base_force_n = -2.5;
  body.buoyancy.mass_kg = 25.0;
  body.hydro.tank_depth_m = 1e3;
  dynamics::VerticalState s;
  double worst = 0.0;
  for (int k = 1; k <= 2000; ++k) {
    s = dynamics::step(body, {0.0, 0.0}, s, 0.01);
    const double t = 0.01 * k;
    const double exact = 0.5 * 0.1 * t * t;
    worst = std::max(worst, std::abs(s.depth_m - exact) / exact);
  }
  std::ostringstream msg;
  msg << "zero-drag closed-form worst relative depth error " << worst;
  c.check(worst <= 0.005, msg.str());
  c.note(msg.str());
}

void comms_model(Criterion & c)
{
  const auto assembly = load_stock();
  const auto bus = comms::BusTopology::from_spec(assembly->comms);
  c.check(comms::round_trip_latency_ns(bus, 1) == 730'000, "L(1) != 0.73 ms");
  c.check(comms::round_trip_latency_ns(bus, 10) == 8'920'000, "L(10) != 8.92 ms");
  bool affine = true;
  for (int n = 1; n < bus.node_count; ++n) {
    affine = affine &&
      comms::round_trip_latency_ns(bus, n + 1) - comms::round_trip_latency_ns(bus, n) == bus.per_node_increment_ns;
  }
  c.check(affine, "increment not constant");
  c.note("L(1) = 0.73 ms, L(10) = 8.92 ms, constant 0.91 ms increment");

  std::vector<comms::CommandStream> streams;
  for (int n = 1; n <= bus.node_count; ++n) {
    streams.push_back({n, 10.0, 0.002 * n, 8});
  }
  const auto sim = comms::run_event_simulation(bus, streams, 10.0, 0);
  bool means = !sim.nodes.empty();
  for (const auto & s : sim.nodes) {
    means = means && s.mean_rtt_s == comms::round_trip_latency(bus, s.node);
  }
  c.check(means, "event-sim means differ from the model under zero jitter");

  auto jittery = bus;
  jittery.jitter_bound_ns = 150'000;
  const auto a = comms::run_event_simulation(jittery, streams, 5.0, 77);
  const auto b = comms::run_event_simulation(jittery, streams, 5.0, 77);
  bool same = a.frames.size() == b.frames.size();
  for (std::size_t i = 0; same && i < a.frames.size(); ++i) {
    same = a.frames[i].completion_ns == b.frames[i].completion_ns && a.frames[i].start_ns == b.frames[i].start_ns;
  }
  c.check(same, "jittered runs differ under a fixed seed");
  c.note("event-sim means exact; fixed-seed runs identical (" + std::to_string(a.frames.size()) + " frames)");
}

void drivetrain(Criterion & c)
{
  const auto assembly = load_stock();
  const auto & d = assembly->drivetrain;
  const auto low = kinematics::screw_output(d.motor_max_torque_nm, 10.0, d);
  const auto high = kinematics::screw_output(d.motor_max_torque_nm, 50.0, d);
  c.near(low.shell_torque_nm, 3.60, 0.005, "torque at 10 rad/s N*m");
  c.near(high.shell_torque_nm, 6.83, 0.005, "torque at 50 rad/s N*m");
  c.near(high.efficiency * 100.0, 65.7, 1.5, "efficiency at 50 rad/s %");
  c.near(high.ideal_torque_nm, 10.5, 1e-12, "ideal output torque N*m");
}

void hysteresis(Criterion & c)
{
  const auto assembly = load_stock();
  const auto & model = assembly->joint.hysteresis;
  const std::vector<std::array<double, 3>> cases{{0.0, 1.94, 2.0}, {6.25, 4.15, 4.0}, {11.25, 5.92, 6.0}};
  for (const auto & [lb, model_deg, approx_deg] : cases) {
    const auto sweep = kinematics::hysteresis_sweep(units::lb_to_kg(lb), model, units::deg_to_rad(30.0));
    const double w = units::rad_to_deg(kinematics::measure_loop_width(sweep));
    std::ostringstream label;
    label << "width at " << lb << " lb deg";
    c.near(w, model_deg, 0.005, label.str());
    c.check(std::abs(w - approx_deg) <= 0.3, label.str() + " not within 0.3 deg of " + std::to_string(approx_deg));
  }
  kinematics::PlayOperator play;
  const double w = units::deg_to_rad(3.0);
  bool identity = true;
  for (int k = 1; k <= 1000; ++k) {
    const double cmd = 0.001 * k;
    const double out = play.apply(cmd, w);
    if (cmd > w / 2.0) {
      identity = identity && out == cmd - w / 2.0;
    }
  }
  c.check(identity, "saturated play output differs from command - w/2");
  c.note("play saturation identity exact over a 1000-step ramp");
}

// Drives `snakeforge serve` over a websocket, then replays its log headless.
void service_replay(Criterion & c)
{
  namespace beast = boost::beast;
  namespace websocket = beast::websocket;
  namespace net = boost::asio;
  using tcp = net::ip::tcp;
  using Json = nlohmann::ordered_json;

  const auto dir = std::filesystem::temp_directory_path() / ("sf_acceptance_" + std::to_string(::getpid()));
  std::filesystem::create_directories(dir);
  const auto log_path = (dir / "session.jsonl").string();
  const std::string cmd = std::string("\"") + SNAKEFORGE_CLI + "\" --assembly \"" + SNAKEFORGE_TEST_DATA_DIR +
    "/arcsnake_v2.yaml\" serve --bind 127.0.0.1:0 --tick-rate 100 --max-ticks 200 --once --record \"" + log_path +
    "\" 2>/dev/null";
  FILE * server = ::popen(cmd.c_str(), "r");
  c.check(server != nullptr, "could not start the service");
  if (!server) {
    return;
  }
  char line[256] = {0};
  std::string banner = std::fgets(line, sizeof line, server) ? line : "";
  const auto colon = banner.rfind(':');
  c.check(colon != std::string::npos, "no listening banner from the service");
  if (colon == std::string::npos) {
    ::pclose(server);
    return;
  }
  const std::string port = banner.substr(colon + 1, banner.find_first_of("\r\n", colon) - colon - 1);

  std::vector<std::string> received;
  {
    net::io_context ioc;
    tcp::resolver resolver(ioc);
    websocket::stream<tcp::socket> ws(ioc);
    net::connect(ws.next_layer(), resolver.resolve("127.0.0.1", port));
    ws.handshake("127.0.0.1:" + port, "/");
    beast::flat_buffer buffer;
    ws.read(buffer);
    const auto hello = Json::parse(beast::buffers_to_string(buffer.data()));
    buffer.consume(buffer.size());
    c.check(hello["type"] == "hello" && hello["version"] == 1, "bad hello");

    const std::vector<std::pair<std::size_t, Json>> script{
      {5, {{"type", "command"}, {"action", "valve"}, {"branch", "rear"}, {"open", true}}},
      {20, {{"type", "command"}, {"action", "gait"}, {"mode", "sidewinding"}, {"pitch_amplitude_rad", 0.3},
        {"yaw_amplitude_rad", 0.5}, {"frequency_hz", 1.0}, {"phase_lag_rad", 0.8}, {"joint_load_kg", 2.0}}},
      {60, {{"type", "command"}, {"action", "valve"}, {"branch", "front"}, {"mode", "inflate"}, {"upstream_pa", 30000}}},
      {90, {{"type", "command"}, {"action", "screw"}, {"speed_rad_s", 25.0}}},
      {120, {{"type", "command"}, {"action", "reset"}}},
      {150, {{"type", "command"}, {"action", "valve"}, {"branch", "both"}, {"mode", "vent"}}},
    };
    std::size_t next = 0;
    ws.text(true);
    beast::error_code ec;
    for (;;) {
      ws.read(buffer, ec);
      if (ec) {
        break;
      }
      auto text = beast::buffers_to_string(buffer.data());
      buffer.consume(buffer.size());
      const auto msg = Json::parse(text);
      if (msg["type"] == "telemetry") {
        received.push_back(std::move(text));
        while (next < script.size() && received.size() >= script[next].first) {
          ws.write(net::buffer(script[next].second.dump()), ec);
          ++next;
        }
      } else {
        c.check(false, "service error: " + text);
      }
    }
  }
  const int status = ::pclose(server);
  c.check(status == 0, "service exited with status " + std::to_string(status));

  std::ifstream in(log_path);
  const auto log = service::read_log(in);
  const auto result = service::replay(load_stock(), log);
  c.check(log.telemetry == received, "log does not hold exactly what the client received");
  c.check(result.identical(), "replay differs at record " + std::to_string(result.first_mismatch));
  c.check(log.commands.size() == 6, "expected 6 logged commands, got " + std::to_string(log.commands.size()));
  c.check(received.size() == 200, "expected 200 telemetry records, got " + std::to_string(received.size()));
  c.note(
    std::to_string(received.size()) + " records and " + std::to_string(log.commands.size()) +
    " commands over the websocket; headless replay " + (result.identical() ? "byte-identical" : "DIFFERS"));
  std::filesystem::remove_all(dir);
}

}  // namespace

int main()
{
  int failures = 0;
  failures += !run("hydrostatics: table rows within 2%, front row warned, < 1 s", table_rows);
  failures += !run("hydrostatics: bladder sizing chain", bladder_chain);
  failures += !run("hydrostatics: flat-pattern round trip and boundary", flat_pattern);
  failures += !run("pneumatics: fill times, target error, minimum upstream, < 5 s", pneumatics_fill);
  failures += !run("vertical dynamics: calibrated descent/ascent and closed form", vertical);
  failures += !run("comms: affine latency, event simulation, determinism", comms_model);
  failures += !run("drivetrain: measured-curve torque and efficiency", drivetrain);
  failures += !run("hysteresis: sweep widths and play saturation", hysteresis);
  failures += !run("service: websocket session replays bitwise", service_replay);
  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << '\n';
  return failures;
}
