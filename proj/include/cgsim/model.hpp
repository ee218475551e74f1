#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace cgsim {

using Slot = std::int64_t;

/// Raised for malformed inputs that cannot be represented as violation data.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Sequence of redundancy-version ids. Indexing past the end wraps cyclically,
/// so a 4-entry pattern covers any repetition count.
class RvPattern {
 public:
  RvPattern() = default;
  explicit RvPattern(std::vector<int> ids) : ids_(std::move(ids)) {}

  static RvPattern all_zero() { return RvPattern({0, 0, 0, 0}); }
  static RvPattern alternating() { return RvPattern({0, 3, 0, 3}); }
  static RvPattern full() { return RvPattern({0, 2, 3, 1}); }

  int at(std::size_t position) const { return ids_[position % ids_.size()]; }
  const std::vector<int>& ids() const { return ids_; }
  std::size_t size() const { return ids_.size(); }

  /// Empty when valid.
  std::vector<std::string> violations() const;

  friend bool operator==(const RvPattern&, const RvPattern&) = default;

 private:
  std::vector<int> ids_;
};

/// Shared-spectrum access parameters. The collision probability is either
/// explicit or derived from a slotted-ALOHA population (contenders, tx_prob).
struct SharedParams {
  int lbt_delay_slots = 0;
  std::optional<double> collision_prob;
  std::optional<int> contenders;
  std::optional<double> tx_prob;

  std::vector<std::string> violations() const;
  /// Resolved per-repetition collision probability.
  double effective_collision() const;

  friend bool operator==(const SharedParams&, const SharedParams&) = default;
};

struct CgConfig;

struct BaselineFirstTo {
  friend bool operator==(const BaselineFirstTo&, const BaselineFirstTo&) = default;
};
struct BaselineStartAtRv0 {
  friend bool operator==(const BaselineStartAtRv0&, const BaselineStartAtRv0&) = default;
};
struct FlexibleOffset {
  friend bool operator==(const FlexibleOffset&, const FlexibleOffset&) = default;
};
struct SharedAssist {
  SharedParams shared;
  friend bool operator==(const SharedAssist&, const SharedAssist&) = default;
};
/// Several configurations with different starting offsets; the UE uses the
/// one whose first TO is nearest after the arrival.
struct MultiConfig {
  std::vector<CgConfig> configs;
  friend bool operator==(const MultiConfig& a, const MultiConfig& b);
};

using SchemeKind =
    std::variant<BaselineFirstTo, BaselineStartAtRv0, FlexibleOffset, SharedAssist, MultiConfig>;

std::string scheme_name(const SchemeKind& scheme);

struct CgConfig {
  int period_slots = 10;
  std::vector<int> to_offsets;
  int rep_count = 1;
  RvPattern rv_pattern = RvPattern::full();
  SchemeKind scheme = FlexibleOffset{};
  int latency_budget_slots = 10;
  int max_periods_deferral = 1;
  /// Blocked slot residues modulo the period (e.g. downlink slots).
  std::set<int> availability_mask;

  int to_count() const { return static_cast<int>(to_offsets.size()); }
  friend bool operator==(const CgConfig&, const CgConfig&) = default;
};

struct Violation {
  std::string field;
  std::string message;
  friend bool operator==(const Violation&, const Violation&) = default;
};

std::vector<Violation> validate_config(const CgConfig& config);

/// Arithmetic progression start, start + (gap + 1), ... with `count` entries.
std::vector<int> generate_offsets(int count, int gap, int start);

struct PeriodTo {
  Slot slot;
  int position;  // index into the configured offsets
  friend bool operator==(const PeriodTo&, const PeriodTo&) = default;
};

/// Unmasked TOs of one period in slot order.
std::vector<PeriodTo> tos_in_period(const CgConfig& config, std::int64_t period_index);

/// Period containing an absolute slot.
inline std::int64_t period_of(Slot slot, int period_slots) {
  return slot >= 0 ? slot / period_slots : -((-slot + period_slots - 1) / period_slots);
}

}  // namespace cgsim
