#pragma once

#include <optional>
#include <vector>

#include "cgsim/model.hpp"
#include "cgsim/phy.hpp"
#include "cgsim/traffic.hpp"

namespace cgsim {

/// Contribution of one in-period arrival offset.
struct ArrivalBreakdown {
  int arrival_offset = 0;
  std::optional<int> to_index;  // 1-based first usable TO; empty after the last TO
  double probability = 0.0;     // conditional on a packet arriving
  int cg_reps = 0;
  int shared_reps = 0;
  double success = 0.0;
};

struct ReliabilityResult {
  double reliability = 0.0;  // P(decoded within budget | packet arrived)
  std::vector<ArrivalBreakdown> per_arrival;
};

/// Largest plan that the received-subset enumeration accepts.
inline constexpr int kMaxEnumeratedReps = 16;

/// Exact reliability of the scheme in `config.scheme`. AnySuccess uses the
/// closed form 1 - eps^n_cg * f^n_sh with f = 1 - (1 - c)(1 - eps); RvAware
/// enumerates every received subset and applies decode(). Throws Error when
/// the arrival law has no mass or RvAware exceeds the enumeration bound.
ReliabilityResult reliability_exact(const CgConfig& config, const TrafficModel& traffic, const ChannelParams& channel);

/// Success probability of a single plan, by closed form or enumeration.
double plan_success_probability(const TransmissionPlan& plan, const ChannelParams& channel);

struct DimensionResult {
  int tos = 0;
  double reliability = 0.0;
  std::optional<double> reliability_below;  // at tos - 1, when evaluated
};

/// Smallest TO count r with reliability >= target, growing a contiguous TO
/// window that starts at the first configured offset. With `k_tracks_r` the
/// repetition count follows r (search starts at r = 1); otherwise K is fixed
/// and the search starts at r = K. Throws Error when no r <= r_max (or r
/// exceeding the period) meets the target.
DimensionResult dimension_tos(const CgConfig& base, const TrafficModel& traffic, const ChannelParams& channel,
                              double target, int r_max, bool k_tracks_r);

/// p_o * T + sum_i p_i * (i - 1). Throws Error when the PMF is not
/// normalized within 1e-9 or its length differs from T.
double expected_wastage(double p_o, const std::vector<double>& p, int tos);

}  // namespace cgsim
