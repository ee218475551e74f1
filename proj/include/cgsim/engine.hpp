#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cgsim/model.hpp"
#include "cgsim/phy.hpp"
#include "cgsim/stats.hpp"
#include "cgsim/traffic.hpp"

namespace cgsim {

struct Scenario {
  std::string id = "scenario";
  CgConfig config;
  TrafficModel traffic = AlwaysAtSlot{};
  ChannelParams channel;
  double slot_duration_ms = 1.0;
  std::int64_t packets = 100000;
  std::uint64_t master_seed = 1;
  /// Gap between generated TO offsets; informational when offsets are explicit.
  int gap = 0;
  /// z-score of the reported reliability interval.
  double ci_z = 1.96;
  /// OpenMP threads for run(); 0 uses the runtime default.
  int threads = 0;

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

/// Empty when the scenario is runnable.
std::vector<std::string> scenario_violations(const Scenario& scenario);

/// Fills channel.shared_collision from the SharedAssist parameters.
void resolve_shared_collision(Scenario& scenario);

struct LatencySummary {
  double p50 = 0;
  double p90 = 0;
  double p99 = 0;
  double max = 0;
  friend bool operator==(const LatencySummary&, const LatencySummary&) = default;
};

struct SimReport {
  std::string scenario_id;
  std::string scheme;
  int tos = 0;
  int rep_count = 0;
  int gap = 0;
  double epsilon = 0.0;
  double collision = 0.0;
  std::int64_t packets = 0;
  std::uint64_t seed = 0;

  std::int64_t delivered = 0;
  std::int64_t attempted = 0;
  double reliability = 0.0;
  Interval ci;
  LatencySummary latency_slots;
  LatencySummary latency_ms;
  double mean_wastage_tos = 0.0;
  int tos_allocated_per_period = 0;
  std::int64_t shared_reps_used = 0;

  friend bool operator==(const SimReport&, const SimReport&) = default;
};

/// Result of one simulated period.
struct PacketOutcome {
  bool arrived = false;
  bool delivered = false;
  std::int64_t latency_slots = 0;
  int wasted_tos = 0;
  int shared_reps = 0;
};

/// Plan, transmit and decode the packet of period `index` using the stream
/// derived from (master_seed, index).
PacketOutcome simulate_packet(const Scenario& scenario, std::int64_t index);

/// Serial reference driver.
SimReport run_serial(const Scenario& scenario);

/// OpenMP driver; bit-identical to run_serial for any thread count.
/// `threads` <= 0 falls back to scenario.threads, then the runtime default.
SimReport run(const Scenario& scenario, int threads = 0);

}  // namespace cgsim
