#pragma once

#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "cgsim/model.hpp"
#include "cgsim/rng.hpp"

namespace cgsim {

struct AlwaysAtSlot {
  int slot = 0;
  friend bool operator==(const AlwaysAtSlot&, const AlwaysAtSlot&) = default;
};
/// Arrival offset uniform on the inclusive range [lo, hi].
struct UniformOverSlots {
  int lo = 0;
  int hi = 0;
  friend bool operator==(const UniformOverSlots&, const UniformOverSlots&) = default;
};
/// Arrival offset ~ Geometric on {0, 1, ...} with the given mean. Mass beyond
/// the last slot of the period means no arrival in that period.
struct GeometricDelay {
  double mean_arrival_slots = 1.0;
  friend bool operator==(const GeometricDelay&, const GeometricDelay&) = default;
};
/// Arrival law given directly over TO indices: p[i] is the probability that
/// the packet arrives exactly at the slot of TO i+1; p_o is "no arrival".
struct ExplicitPmf {
  double p_o = 0.0;
  std::vector<double> p;
  friend bool operator==(const ExplicitPmf&, const ExplicitPmf&) = default;
};

using TrafficModel = std::variant<AlwaysAtSlot, UniformOverSlots, GeometricDelay, ExplicitPmf>;

std::string traffic_name(const TrafficModel& model);

std::vector<std::string> traffic_violations(const TrafficModel& model, const CgConfig& config);

/// Distribution of the in-period arrival offset.
struct ArrivalLaw {
  double no_arrival = 0.0;
  std::vector<std::pair<int, double>> slots;  // (offset within period, probability)
};

ArrivalLaw arrival_law(const TrafficModel& model, const CgConfig& config);

/// At most one arrival per period; absent means no packet this period.
/// Consumes exactly one uniform draw.
std::optional<Slot> sample_arrival(const TrafficModel& model, const CgConfig& config, RngStream& rng,
                                   std::int64_t period_index);

struct ArrivalPmf {
  double p_o = 0.0;
  std::vector<double> p;  // p[i] = P(first usable TO is TO i+1)
};

/// Arrivals after the last TO fold into p_o together with "no arrival".
ArrivalPmf arrival_pmf(const TrafficModel& model, const CgConfig& config);

/// 1-based index of the first configured TO at or after the in-period offset,
/// or nullopt when the arrival is after the last TO.
std::optional<int> first_usable_to(const CgConfig& config, int arrival_offset);

}  // namespace cgsim
