#include "cgsim/analytics.hpp"

#include <cmath>
#include <numeric>

namespace cgsim {

namespace {

// Reliabilities that equal the target up to rounding count as meeting it.
constexpr double kTargetTolerance = 1e-12;

double rep_success(const PlannedRep& rep, const ChannelParams& ch) {
  const double link = 1.0 - ch.epsilon;
  return rep.resource == Resource::Shared ? (1.0 - ch.shared_collision) * link : link;
}

double enumerate_rv_aware(const TransmissionPlan& plan, const ChannelParams& ch) {
  const auto& reps = plan.repetitions;
  const int n = static_cast<int>(reps.size());
  if (n > kMaxEnumeratedReps) throw Error("rv-aware enumeration bound exceeded");
  double total = 0.0;
  std::vector<RepOutcome> outcomes(reps.size());
  for (std::uint32_t subset = 0; subset < (1u << n); ++subset) {
    double weight = 1.0;
    for (int j = 0; j < n; ++j) {
      const bool got = (subset >> j) & 1u;
      const double s = rep_success(reps[j], ch);
      weight *= got ? s : 1.0 - s;
      outcomes[j] = {reps[j], got};
    }
    if (weight == 0.0) continue;
    if (decode(outcomes, ch.decode_model).decoded) total += weight;
  }
  return total;
}

}  // namespace

double plan_success_probability(const TransmissionPlan& plan, const ChannelParams& channel) {
  if (channel.decode_model.kind == DecodeKind::RvAware) return enumerate_rv_aware(plan, channel);
  const double f = 1.0 - (1.0 - channel.shared_collision) * (1.0 - channel.epsilon);
  return 1.0 - std::pow(channel.epsilon, plan.cg_count()) * std::pow(f, plan.shared_count());
}

ReliabilityResult reliability_exact(const CgConfig& config, const TrafficModel& traffic, const ChannelParams& channel) {
  if (channel.decode_model.kind == DecodeKind::RvAware && tos_allocated_per_period(config) > kMaxEnumeratedReps) {
    throw Error("rv-aware enumeration bound exceeded: T > " + std::to_string(kMaxEnumeratedReps));
  }
  const ArrivalLaw law = arrival_law(traffic, config);
  double arrival_mass = 0.0;
  for (const auto& [offset, prob] : law.slots) arrival_mass += prob;
  if (!(arrival_mass > 0.0)) throw Error("arrival law has no mass: reliability undefined");

  ReliabilityResult result;
  for (const auto& [offset, prob] : law.slots) {
    const TransmissionPlan p = plan(config, offset);
    ArrivalBreakdown row;
    row.arrival_offset = offset;
    row.to_index = first_usable_to(config, offset);
    row.probability = prob / arrival_mass;
    row.cg_reps = p.cg_count();
    row.shared_reps = p.shared_count();
    row.success = plan_success_probability(p, channel);
    result.reliability += row.probability * row.success;
    result.per_arrival.push_back(row);
  }
  return result;
}

DimensionResult dimension_tos(const CgConfig& base, const TrafficModel& traffic, const ChannelParams& channel,
                              double target, int r_max, bool k_tracks_r) {
  if (!(target >= 0.0 && target < 1.0)) throw Error("target must lie in [0, 1)");
  const int start = base.to_offsets.empty() ? 0 : base.to_offsets.front();
  const int r_min = k_tracks_r ? 1 : base.rep_count;
  std::optional<double> previous;
  for (int r = r_min; r <= r_max && start + r <= base.period_slots; ++r) {
    CgConfig cfg = base;
    cfg.to_offsets = generate_offsets(r, 0, start);
    if (k_tracks_r) cfg.rep_count = r;
    if (auto v = validate_config(cfg); !v.empty()) throw Error("dimensioning: " + v.front().message);
    const double rel = reliability_exact(cfg, traffic, channel).reliability;
    if (rel >= target - kTargetTolerance) return {r, rel, previous};
    previous = rel;
  }
  throw Error("infeasible: no TO count up to " + std::to_string(r_max) + " meets the target");
}

double expected_wastage(double p_o, const std::vector<double>& p, int tos) {
  if (static_cast<int>(p.size()) != tos) throw Error("pmf length differs from T");
  const double total = std::accumulate(p.begin(), p.end(), p_o);
  if (std::abs(total - 1.0) > 1e-9) throw Error("pmf not normalized");
  double w = p_o * tos;
  for (int i = 1; i <= tos; ++i) w += p[i - 1] * (i - 1);
  return w;
}

}  // namespace cgsim
