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

#include "core/comms.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <queue>
#include <tuple>

#include "core/error.hpp"

namespace snakeforge::comms
{

std::int64_t seconds_to_ns(double seconds)
{
  return std::llround(seconds * 1e9);
}

BusTopology BusTopology::from_spec(const CommsSpec & spec)
{
  BusTopology t;
  t.node_count = spec.node_count;
  t.first_hop_ns = seconds_to_ns(spec.first_hop_rtt_s);
  t.per_node_increment_ns = seconds_to_ns(spec.per_node_rtt_increment_s);
  t.jitter_bound_ns = seconds_to_ns(spec.jitter_bound_s);
  t.validate();
  return t;
}

void BusTopology::validate() const
{
  require(node_count >= 1, ErrorCode::kInvalidArgument, "node count must be at least 1");
  require(first_hop_ns > 0 && per_node_increment_ns > 0, ErrorCode::kInvalidArgument, "latencies must be positive");
  require(
    jitter_bound_ns >= 0 && jitter_bound_ns < first_hop_ns, ErrorCode::kInvalidArgument,
    "jitter bound must be non-negative and below the first-hop latency");
}

std::int64_t round_trip_latency_ns(const BusTopology & topology, int node)
{
  topology.validate();
  require(
    node >= 1 && node <= topology.node_count, ErrorCode::kOutOfRange,
    "node index " + std::to_string(node) + " outside 1.." + std::to_string(topology.node_count));
  return topology.first_hop_ns + static_cast<std::int64_t>(node - 1) * topology.per_node_increment_ns;
}

double round_trip_latency(const BusTopology & topology, int node)
{
  return static_cast<double>(round_trip_latency_ns(topology, node)) / 1e9;
}

std::int64_t round_trip_latency_ns(const BusTopology & topology, int node, std::mt19937_64 & rng)
{
  const std::int64_t nominal = round_trip_latency_ns(topology, node);
  if (topology.jitter_bound_ns == 0) {
    return nominal;
  }
  // Plain modulo keeps the stream identical across standard libraries.
  const auto span = static_cast<std::uint64_t>(2 * topology.jitter_bound_ns + 1);
  return nominal + static_cast<std::int64_t>(rng() % span) - topology.jitter_bound_ns;
}

double max_control_rate(const BusTopology & topology)
{
  const std::int64_t worst = round_trip_latency_ns(topology, topology.node_count) + topology.jitter_bound_ns;
  return 1e9 / static_cast<double>(worst);
}

EventSimResult run_event_simulation(
  const BusTopology & topology, std::span<const CommandStream> schedule, double duration_s, std::uint64_t seed)
{
  topology.validate();
  require(duration_s > 0.0 && std::isfinite(duration_s), ErrorCode::kInvalidArgument, "duration must be positive");
  std::vector<std::int64_t> periods;
  EventSimResult result;
  for (const auto & s : schedule) {
    require(s.rate_hz > 0.0 && std::isfinite(s.rate_hz), ErrorCode::kInvalidArgument, "stream rates must be positive");
    require(s.phase_s >= 0.0, ErrorCode::kInvalidArgument, "stream phase must be non-negative");
    require(s.payload_bytes >= 0 && s.payload_bytes <= 8, ErrorCode::kInvalidArgument, "payload must be 0..8 bytes");
    round_trip_latency_ns(topology, s.node);  // range check
    const std::int64_t period = seconds_to_ns(1.0 / s.rate_hz);
    require(period > 0, ErrorCode::kInvalidArgument, "stream rate too high");
    periods.push_back(period);
    result.offered_utilization += s.rate_hz * round_trip_latency(topology, s.node);
  }
  result.overloaded = result.offered_utilization > 1.0;

  const std::int64_t horizon = seconds_to_ns(duration_s);
  // (enqueue time, stream, sequence)
  using Pending = std::tuple<std::int64_t, std::size_t, std::int64_t>;
  std::priority_queue<Pending, std::vector<Pending>, std::greater<>> pending;
  for (std::size_t i = 0; i < schedule.size(); ++i) {
    const std::int64_t first = seconds_to_ns(schedule[i].phase_s);
    if (first < horizon) {
      pending.emplace(first, i, 0);
    }
  }

  std::mt19937_64 rng(seed);
  std::int64_t bus_free = 0;
  while (!pending.empty()) {
    const auto [enqueue, stream, seq] = pending.top();
    pending.pop();
    const auto & s = schedule[stream];
    FrameRecord f;
    f.node = s.node;
    f.payload_bytes = s.payload_bytes;
    f.stream = stream;
    f.enqueue_ns = enqueue;
    f.start_ns = std::max(enqueue, bus_free);
    f.completion_ns = f.start_ns + round_trip_latency_ns(topology, s.node, rng);
    f.deadline_missed = f.completion_ns - f.enqueue_ns > periods[stream];
    bus_free = f.completion_ns;
    result.missed_deadlines += f.deadline_missed ? 1 : 0;
    result.max_queue_ns = std::max(result.max_queue_ns, f.queue_ns());
    result.frames.push_back(f);

    const std::int64_t next = seconds_to_ns(s.phase_s) + (seq + 1) * periods[stream];
    if (next < horizon) {
      pending.emplace(next, stream, seq + 1);
    }
  }

  struct Acc
  {
    std::size_t n = 0;
    std::int64_t sum = 0, min = 0, max = 0, queue = 0;
    std::size_t missed = 0;
  };
  std::map<int, Acc> acc;
  for (const auto & f : result.frames) {
    auto & a = acc[f.node];
    const std::int64_t rtt = f.rtt_ns();
    a.min = a.n == 0 ? rtt : std::min(a.min, rtt);
    a.max = a.n == 0 ? rtt : std::max(a.max, rtt);
    a.sum += rtt;
    a.queue += f.queue_ns();
    a.missed += f.deadline_missed ? 1 : 0;
    ++a.n;
  }
  for (const auto & [node, a] : acc) {
    const double n = static_cast<double>(a.n);
    result.nodes.push_back(
      {node, a.n, static_cast<double>(a.sum) / n / 1e9, static_cast<double>(a.min) / 1e9,
        static_cast<double>(a.max) / 1e9, static_cast<double>(a.queue) / n / 1e9, a.missed});
  }
  return result;
}

}  // namespace snakeforge::comms
