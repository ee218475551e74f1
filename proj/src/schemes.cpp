#include "cgsim/schemes.hpp"

#include <algorithm>

namespace cgsim {

namespace {

enum class CgKind { FirstTo, StartAtRv0, Flexible };

std::optional<CgKind> cg_kind(const SchemeKind& scheme) {
  if (std::holds_alternative<BaselineFirstTo>(scheme)) return CgKind::FirstTo;
  if (std::holds_alternative<BaselineStartAtRv0>(scheme)) return CgKind::StartAtRv0;
  if (std::holds_alternative<FlexibleOffset>(scheme)) return CgKind::Flexible;
  return std::nullopt;
}

// Repetitions one period can carry for a UE whose data is ready at `ready`.
std::vector<PlannedRep> plan_period(CgKind kind, const CgConfig& config, Slot ready, std::int64_t period) {
  const auto tos = tos_in_period(config, period);
  const auto k = static_cast<std::size_t>(config.rep_count);
  std::vector<PlannedRep> reps;
  switch (kind) {
    case CgKind::FirstTo: {
      if (tos.empty() || ready > tos.front().slot) break;
      for (std::size_t j = 0; j < std::min(k, tos.size()); ++j) {
        reps.push_back({tos[j].slot, Resource::Cg, config.rv_pattern.at(tos[j].position)});
      }
      break;
    }
    case CgKind::StartAtRv0: {
      auto it = std::find_if(tos.begin(), tos.end(), [&](const PeriodTo& to) {
        return to.slot >= ready && config.rv_pattern.at(to.position) == 0;
      });
      for (; it != tos.end() && reps.size() < k; ++it) {
        reps.push_back({it->slot, Resource::Cg, config.rv_pattern.at(it->position)});
      }
      break;
    }
    case CgKind::Flexible: {
      auto it = std::find_if(tos.begin(), tos.end(), [&](const PeriodTo& to) { return to.slot >= ready; });
      for (std::size_t j = 0; it != tos.end() && j < k; ++it, ++j) {
        reps.push_back({it->slot, Resource::Cg, config.rv_pattern.at(j)});
      }
      break;
    }
  }
  return reps;
}

void drop_outside_budget(std::vector<PlannedRep>& reps, Slot arrival, int budget) {
  std::erase_if(reps, [&](const PlannedRep& r) { return r.slot >= arrival + budget; });
}

// Runs `try_period(ready, period)` from the arrival period onward until it
// yields repetitions or the deferral allowance or budget runs out.
template <class TryPeriod>
TransmissionPlan with_deferral(Slot arrival, int period_slots, int budget, int max_deferral, TryPeriod try_period) {
  TransmissionPlan plan;
  const std::int64_t first = period_of(arrival, period_slots);
  for (int d = 0; d <= max_deferral; ++d) {
    const std::int64_t period = first + d;
    const Slot period_start = period * period_slots;
    if (d > 0 && period_start >= arrival + budget) break;
    auto [reps, chosen] = try_period(std::max(arrival, period_start), period);
    if (reps.empty()) continue;
    drop_outside_budget(reps, arrival, budget);
    plan.repetitions = std::move(reps);
    plan.deferred_periods = d;
    plan.chosen_config = chosen;
    break;
  }
  return plan;
}

}  // namespace

int TransmissionPlan::cg_count() const {
  return static_cast<int>(std::count_if(repetitions.begin(), repetitions.end(),
                                        [](const PlannedRep& r) { return r.resource == Resource::Cg; }));
}

int TransmissionPlan::shared_count() const { return size() - cg_count(); }

TransmissionPlan plan_cg(const CgConfig& config, Slot arrival) {
  const auto kind = cg_kind(config.scheme);
  if (!kind) throw Error("plan_cg: scheme " + scheme_name(config.scheme) + " is not a CG-only scheme");
  return with_deferral(arrival, config.period_slots, config.latency_budget_slots, config.max_periods_deferral,
                       [&](Slot ready, std::int64_t period) {
                         return std::pair{plan_period(*kind, config, ready, period), std::optional<int>{}};
                       });
}

TransmissionPlan plan_shared_assist(const CgConfig& config, const SharedParams& shared, Slot arrival) {
  if (config.to_count() != config.rep_count) throw Error("shared assist requires T = K");
  TransmissionPlan plan;
  auto reps = plan_period(CgKind::Flexible, config, arrival, period_of(arrival, config.period_slots));
  const int cg_reps = static_cast<int>(reps.size());
  const Slot last = reps.empty() ? arrival : std::max(reps.back().slot, arrival);
  const Slot start = last + shared.lbt_delay_slots + 1;
  for (int j = 0; j < config.rep_count - cg_reps; ++j) {
    reps.push_back({start + j, Resource::Shared, config.rv_pattern.at(static_cast<std::size_t>(cg_reps + j))});
  }
  drop_outside_budget(reps, arrival, config.latency_budget_slots);
  plan.repetitions = std::move(reps);
  return plan;
}

TransmissionPlan plan_multi_config(const std::vector<CgConfig>& configs, Slot arrival, int latency_budget_slots,
                                   int max_periods_deferral) {
  if (configs.empty()) throw Error("plan_multi_config: empty config list");
  const int period_slots = configs.front().period_slots;
  return with_deferral(
      arrival, period_slots, latency_budget_slots, max_periods_deferral, [&](Slot ready, std::int64_t period) {
        std::optional<int> chosen;
        Slot best = 0;
        for (std::size_t m = 0; m < configs.size(); ++m) {
          const auto tos = tos_in_period(configs[m], period);
          if (tos.empty() || tos.front().slot < ready) continue;
          if (!chosen || tos.front().slot < best) {
            chosen = static_cast<int>(m);
            best = tos.front().slot;
          }
        }
        std::vector<PlannedRep> reps;
        if (chosen) {
          const CgConfig& member = configs[*chosen];
          if (const auto* sa = std::get_if<SharedAssist>(&member.scheme)) {
            CgConfig unbounded = member;
            unbounded.latency_budget_slots = latency_budget_slots + static_cast<int>(ready - arrival);
            reps = plan_shared_assist(unbounded, sa->shared, ready).repetitions;
          } else if (const auto kind = cg_kind(member.scheme)) {
            reps = plan_period(*kind, member, ready, period);
          } else {
            throw Error("plan_multi_config: nested multi-config");
          }
        }
        return std::pair{std::move(reps), chosen};
      });
}

TransmissionPlan plan(const CgConfig& config, Slot arrival) {
  if (const auto* sa = std::get_if<SharedAssist>(&config.scheme)) {
    return plan_shared_assist(config, sa->shared, arrival);
  }
  if (const auto* multi = std::get_if<MultiConfig>(&config.scheme)) {
    return plan_multi_config(multi->configs, arrival, config.latency_budget_slots, config.max_periods_deferral);
  }
  return plan_cg(config, arrival);
}

namespace {

int tos_before(const CgConfig& config, Slot arrival, std::int64_t period_index) {
  const Slot base = period_index * config.period_slots;
  return static_cast<int>(std::count_if(config.to_offsets.begin(), config.to_offsets.end(),
                                        [&](int off) { return base + off < arrival; }));
}

}  // namespace

int wasted_tos(const TransmissionPlan& plan, const CgConfig& config, std::optional<Slot> arrival,
               std::int64_t period_index) {
  if (const auto* multi = std::get_if<MultiConfig>(&config.scheme)) {
    const int total = tos_allocated_per_period(config);
    if (!arrival || !plan.chosen_config || plan.deferred_periods > 0) return total;
    const CgConfig& member = multi->configs[*plan.chosen_config];
    return total - (member.to_count() - tos_before(member, *arrival, period_index));
  }
  if (!arrival) return config.to_count();
  return tos_before(config, *arrival, period_index);
}

int tos_allocated_per_period(const CgConfig& config) {
  if (const auto* multi = std::get_if<MultiConfig>(&config.scheme)) {
    int total = 0;
    for (const auto& m : multi->configs) total += m.to_count();
    return total;
  }
  return config.to_count();
}

}  // namespace cgsim
