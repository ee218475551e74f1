#pragma once

#include <optional>
#include <vector>

#include "cgsim/model.hpp"

namespace cgsim {

enum class Resource { Cg, Shared };

struct PlannedRep {
  Slot slot = 0;
  Resource resource = Resource::Cg;
  int rv = 0;
  friend bool operator==(const PlannedRep&, const PlannedRep&) = default;
};

struct TransmissionPlan {
  std::vector<PlannedRep> repetitions;
  int deferred_periods = 0;
  std::optional<int> chosen_config;

  int cg_count() const;
  int shared_count() const;
  int size() const { return static_cast<int>(repetitions.size()); }
  bool empty() const { return repetitions.empty(); }

  friend bool operator==(const TransmissionPlan&, const TransmissionPlan&) = default;
};

/// Plan for BaselineFirstTo, BaselineStartAtRv0 or FlexibleOffset, taken from
/// `config.scheme`. When a period yields no repetition the UE retries in the
/// next period, up to `max_periods_deferral` times while the budget window
/// [arrival, arrival + D) still reaches it. Throws Error for other schemes.
///
/// BaselineStartAtRv0 binds RVs to TO positions; FlexibleOffset binds them to
/// the transmissions, so its first repetition always carries pattern[0] = 0.
TransmissionPlan plan_cg(const CgConfig& config, Slot arrival);

/// FlexibleOffset over the K CG TOs, then the remaining K - K_CG repetitions
/// on the shared band, one per slot after the LBT delay, continuing the RV
/// pattern. Requires T = K; throws Error otherwise.
TransmissionPlan plan_shared_assist(const CgConfig& config, const SharedParams& shared, Slot arrival);

/// Picks the member config whose first TO at or after the arrival is nearest
/// (ties to the lowest index) and applies that member's scheme. Throws Error
/// on an empty list.
TransmissionPlan plan_multi_config(const std::vector<CgConfig>& configs, Slot arrival, int latency_budget_slots,
                                   int max_periods_deferral);

/// Dispatches on `config.scheme`.
TransmissionPlan plan(const CgConfig& config, Slot arrival);

/// TOs of the period that elapse unused before the arrival; all of them when
/// there is no arrival. For MultiConfig every member TO counts except those of
/// the chosen member at or after the arrival.
int wasted_tos(const TransmissionPlan& plan, const CgConfig& config, std::optional<Slot> arrival,
               std::int64_t period_index);

/// TOs reserved per period, summed over members for MultiConfig.
int tos_allocated_per_period(const CgConfig& config);

}  // namespace cgsim
