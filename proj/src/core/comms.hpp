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


#ifndef SNAKEFORGE_CORE_COMMS_HPP_
#define SNAKEFORGE_CORE_COMMS_HPP_

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "core/model.hpp"

namespace snakeforge::comms
{

// Daisy-chained bus with an affine round-trip cost per addressed node. Times
// are integer nanoseconds so the affine model is exact.
struct BusTopology
{
  int node_count = 10;
  std::int64_t first_hop_ns = 730'000;
  std::int64_t per_node_increment_ns = 910'000;
  std::int64_t jitter_bound_ns = 0;  // uniform in [-b, +b] when non-zero

  static BusTopology from_spec(const CommsSpec & spec);
  void validate() const;
};

std::int64_t seconds_to_ns(double seconds);

// Nominal round trip to node n (1-based), without jitter.
std::int64_t round_trip_latency_ns(const BusTopology & topology, int node);
double round_trip_latency(const BusTopology & topology, int node);

// Nominal round trip plus one jitter draw from rng.
std::int64_t round_trip_latency_ns(const BusTopology & topology, int node, std::mt19937_64 & rng);

// Fastest loop that fits a worst-case round trip to the farthest node.
double max_control_rate(const BusTopology & topology);

struct CommandStream
{
  int node = 1;
  double rate_hz = 100.0;
  double phase_s = 0.0;
  int payload_bytes = 8;
};

struct FrameRecord
{
  int node = 0;
  int payload_bytes = 0;
  std::size_t stream = 0;
  std::int64_t enqueue_ns = 0;
  std::int64_t start_ns = 0;       // bus acquired
  std::int64_t completion_ns = 0;  // response back at the host
  bool deadline_missed = false;    // not done within one stream period

  std::int64_t rtt_ns() const {return completion_ns - start_ns;}
  std::int64_t queue_ns() const {return start_ns - enqueue_ns;}
};

struct NodeStats
{
  int node = 0;
  std::size_t frames = 0;
  double mean_rtt_s = 0.0;
  double min_rtt_s = 0.0;
  double max_rtt_s = 0.0;
  double mean_queue_s = 0.0;
  std::size_t missed_deadlines = 0;
};

struct EventSimResult
{
  std::vector<FrameRecord> frames;  // in bus order
  std::vector<NodeStats> nodes;     // addressed nodes, ascending
  double offered_utilization = 0.0; // sum of rate x nominal RTT
  bool overloaded = false;          // offered load above bus capacity
  std::size_t missed_deadlines = 0;
  std::int64_t max_queue_ns = 0;
};

// The host sends one request at a time and waits for the response; requests
// wait in a single FIFO in enqueue order (ties by stream order). Frames are
// generated for enqueue times in [0, duration).
EventSimResult run_event_simulation(
  const BusTopology & topology, std::span<const CommandStream> schedule, double duration_s, std::uint64_t seed);

}  // namespace snakeforge::comms

#endif  // SNAKEFORGE_CORE_COMMS_HPP_
