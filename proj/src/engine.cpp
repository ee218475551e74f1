#include "cgsim/engine.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <omp.h>

#include "cgsim/schemes.hpp"

namespace cgsim {

namespace {

bool is_probability(double p) { return std::isfinite(p) && p >= 0.0 && p <= 1.0; }

void check_runnable(const Scenario& scenario) {
  const auto v = scenario_violations(scenario);
  if (v.empty()) return;
  std::string msg = "invalid scenario:";
  for (const auto& s : v) msg += " " + s + ";";
  throw Error(msg);
}

struct Totals {
  std::int64_t attempted = 0;
  std::int64_t delivered = 0;
  std::int64_t wasted = 0;
  std::int64_t shared = 0;
};

SimReport make_report(const Scenario& s, const Totals& t, std::vector<std::int64_t> latencies) {
  SimReport r;
  r.scenario_id = s.id;
  r.scheme = scheme_name(s.config.scheme);
  r.tos = s.config.to_count();
  r.rep_count = s.config.rep_count;
  r.gap = s.gap;
  r.epsilon = s.channel.epsilon;
  r.collision = s.channel.shared_collision;
  r.packets = s.packets;
  r.seed = s.master_seed;

  r.attempted = t.attempted;
  r.delivered = t.delivered;
  if (t.attempted > 0) {
    r.reliability = static_cast<double>(t.delivered) / static_cast<double>(t.attempted);
    r.ci = wilson_ci(t.delivered, t.attempted, s.ci_z);
  }
  if (!latencies.empty()) {
    std::sort(latencies.begin(), latencies.end());
    r.latency_slots = {static_cast<double>(percentile_sorted(latencies, 0.5)),
                       static_cast<double>(percentile_sorted(latencies, 0.9)),
                       static_cast<double>(percentile_sorted(latencies, 0.99)),
                       static_cast<double>(latencies.back())};
  }
  const double ms = s.slot_duration_ms;
  r.latency_ms = {r.latency_slots.p50 * ms, r.latency_slots.p90 * ms, r.latency_slots.p99 * ms,
                  r.latency_slots.max * ms};
  r.mean_wastage_tos = static_cast<double>(t.wasted) / static_cast<double>(s.packets);
  r.tos_allocated_per_period = tos_allocated_per_period(s.config);
  r.shared_reps_used = t.shared;
  return r;
}

}  // namespace

std::vector<std::string> scenario_violations(const Scenario& s) {
  std::vector<std::string> out;
  for (const auto& v : validate_config(s.config)) out.push_back(v.message);
  for (auto& m : traffic_violations(s.traffic, s.config)) out.push_back(std::move(m));
  if (!is_probability(s.channel.epsilon) || !is_probability(s.channel.shared_collision)) {
    out.push_back("probability out of range");
  }
  if (s.packets < 1) out.push_back("packets must be at least 1");
  if (!(s.slot_duration_ms > 0.0)) out.push_back("slot duration must be positive");
  if (!(s.ci_z > 0.0)) out.push_back("ci z must be positive");
  if (s.channel.decode_model.kind == DecodeKind::RvAware && !s.channel.decode_model.table.monotone()) {
    out.push_back("rv decode table is not monotone");
  }
  return out;
}

void resolve_shared_collision(Scenario& scenario) {
  if (const auto* sa = std::get_if<SharedAssist>(&scenario.config.scheme)) {
    scenario.channel.shared_collision = sa->shared.effective_collision();
  }
}

PacketOutcome simulate_packet(const Scenario& s, std::int64_t index) {
  RngStream rng(s.master_seed, static_cast<std::uint64_t>(index));
  PacketOutcome out;
  const auto arrival = sample_arrival(s.traffic, s.config, rng, index);
  const TransmissionPlan p = arrival ? plan(s.config, *arrival) : TransmissionPlan{};
  out.wasted_tos = wasted_tos(p, s.config, arrival, index);
  if (!arrival) return out;
  out.arrived = true;
  out.shared_reps = p.shared_count();
  const auto outcomes = transmit(p, s.channel, rng);
  const DecodeResult d = decode(outcomes, s.channel.decode_model);
  if (d.decoded && d.slot < *arrival + s.config.latency_budget_slots) {
    out.delivered = true;
    out.latency_slots = d.slot - *arrival + 1;
  }
  return out;
}

SimReport run_serial(const Scenario& scenario) {
  check_runnable(scenario);
  Totals t;
  std::vector<std::int64_t> latencies;
  for (std::int64_t i = 0; i < scenario.packets; ++i) {
    const PacketOutcome o = simulate_packet(scenario, i);
    t.wasted += o.wasted_tos;
    if (!o.arrived) continue;
    ++t.attempted;
    t.shared += o.shared_reps;
    if (o.delivered) {
      ++t.delivered;
      latencies.push_back(o.latency_slots);
    }
  }
  return make_report(scenario, t, std::move(latencies));
}

SimReport run(const Scenario& scenario, int threads) {
  check_runnable(scenario);
  if (threads <= 0) threads = scenario.threads;
  if (threads <= 0) threads = omp_get_max_threads();

  const std::int64_t n = scenario.packets;
  // Zero marks "not delivered"; delivered latencies are at least one slot.
  std::vector<std::int64_t> latency(static_cast<std::size_t>(n), 0);
  std::int64_t attempted = 0, delivered = 0, wasted = 0, shared = 0;

#pragma omp parallel for num_threads(threads) schedule(static) reduction(+ : attempted, delivered, wasted, shared)
  for (std::int64_t i = 0; i < n; ++i) {
    const PacketOutcome o = simulate_packet(scenario, i);
    wasted += o.wasted_tos;
    if (o.arrived) {
      ++attempted;
      shared += o.shared_reps;
    }
    if (o.delivered) {
      ++delivered;
      latency[static_cast<std::size_t>(i)] = o.latency_slots;
    }
  }

  std::erase(latency, 0);
  return make_report(scenario, Totals{attempted, delivered, wasted, shared}, std::move(latency));
}

}  // namespace cgsim
