#include "cgsim/traffic.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace cgsim {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};

bool is_probability(double p) { return std::isfinite(p) && p >= 0.0 && p <= 1.0; }

}  // namespace

std::string traffic_name(const TrafficModel& model) {
  return std::visit(Overloaded{
                        [](const AlwaysAtSlot&) { return std::string("always"); },
                        [](const UniformOverSlots&) { return std::string("uniform"); },
                        [](const GeometricDelay&) { return std::string("geometric"); },
                        [](const ExplicitPmf&) { return std::string("pmf"); },
                    },
                    model);
}

std::vector<std::string> traffic_violations(const TrafficModel& model, const CgConfig& config) {
  std::vector<std::string> out;
  const int period = config.period_slots;
  std::visit(Overloaded{
                 [&](const AlwaysAtSlot& m) {
                   if (m.slot < 0 || m.slot >= period) out.push_back("arrival slot outside [0, period)");
                 },
                 [&](const UniformOverSlots& m) {
                   if (m.lo < 0 || m.lo > m.hi || m.hi >= period) {
                     out.push_back("uniform range must satisfy 0 ≤ lo ≤ hi < period");
                   }
                 },
                 [&](const GeometricDelay& m) {
                   if (!std::isfinite(m.mean_arrival_slots) || m.mean_arrival_slots <= 0.0) {
                     out.push_back("mean arrival must be positive");
                   }
                 },
                 [&](const ExplicitPmf& m) {
                   bool ranged = is_probability(m.p_o);
                   for (double p : m.p) ranged = ranged && is_probability(p);
                   if (!ranged) out.push_back("probability out of range");
                   if (m.p.size() > config.to_offsets.size()) out.push_back("pmf longer than T");
                   const double total = std::accumulate(m.p.begin(), m.p.end(), m.p_o);
                   if (std::abs(total - 1.0) > 1e-12) out.push_back("pmf does not sum to 1");
                 },
             },
             model);
  return out;
}

ArrivalLaw arrival_law(const TrafficModel& model, const CgConfig& config) {
  ArrivalLaw law;
  const int period = config.period_slots;
  std::visit(Overloaded{
                 [&](const AlwaysAtSlot& m) { law.slots.emplace_back(m.slot, 1.0); },
                 [&](const UniformOverSlots& m) {
                   const double w = 1.0 / (m.hi - m.lo + 1);
                   for (int s = m.lo; s <= m.hi; ++s) law.slots.emplace_back(s, w);
                 },
                 [&](const GeometricDelay& m) {
                   const double p = 1.0 / (1.0 + m.mean_arrival_slots);
                   for (int s = 0; s < period; ++s) law.slots.emplace_back(s, p * std::pow(1.0 - p, s));
                   law.no_arrival = std::pow(1.0 - p, period);
                 },
                 [&](const ExplicitPmf& m) {
                   law.no_arrival = m.p_o;
                   for (std::size_t i = 0; i < m.p.size(); ++i) {
                     if (m.p[i] > 0.0) law.slots.emplace_back(config.to_offsets[i], m.p[i]);
                   }
                 },
             },
             model);
  return law;
}

std::optional<Slot> sample_arrival(const TrafficModel& model, const CgConfig& config, RngStream& rng,
                                   std::int64_t period_index) {
  const double u = rng.uniform();
  const Slot base = period_index * config.period_slots;
  return std::visit(
      Overloaded{
          [&](const AlwaysAtSlot& m) -> std::optional<Slot> { return base + m.slot; },
          [&](const UniformOverSlots& m) -> std::optional<Slot> {
            const int width = m.hi - m.lo + 1;
            const int k = std::min(width - 1, static_cast<int>(u * width));
            return base + m.lo + k;
          },
          [&](const GeometricDelay& m) -> std::optional<Slot> {
            const double p = 1.0 / (1.0 + m.mean_arrival_slots);
            // Inverse CDF: P(offset >= k) = (1 - p)^k.
            const double k = std::floor(std::log1p(-u) / std::log1p(-p));
            if (!(k < config.period_slots)) return std::nullopt;
            return base + static_cast<Slot>(k);
          },
          [&](const ExplicitPmf& m) -> std::optional<Slot> {
            double acc = 0.0;
            for (std::size_t i = 0; i < m.p.size(); ++i) {
              acc += m.p[i];
              if (u < acc) return base + config.to_offsets[i];
            }
            return std::nullopt;
          },
      },
      model);
}

std::optional<int> first_usable_to(const CgConfig& config, int arrival_offset) {
  const auto it = std::lower_bound(config.to_offsets.begin(), config.to_offsets.end(), arrival_offset);
  if (it == config.to_offsets.end()) return std::nullopt;
  return static_cast<int>(it - config.to_offsets.begin()) + 1;
}

ArrivalPmf arrival_pmf(const TrafficModel& model, const CgConfig& config) {
  const ArrivalLaw law = arrival_law(model, config);
  ArrivalPmf pmf;
  pmf.p.assign(config.to_offsets.size(), 0.0);
  pmf.p_o = law.no_arrival;
  for (const auto& [offset, prob] : law.slots) {
    if (auto i = first_usable_to(config, offset)) {
      pmf.p[*i - 1] += prob;
    } else {
      pmf.p_o += prob;
    }
  }
  return pmf;
}

}  // namespace cgsim
