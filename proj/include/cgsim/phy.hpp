#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "cgsim/rng.hpp"
#include "cgsim/schemes.hpp"

namespace cgsim {

/// Decodability of a set of received redundancy versions. Entry `m` is the
/// minimum number of received repetitions needed when the received RV set has
/// bitmask `m` (bit r set for RV r); kNever marks sets that never decode.
struct RvDecodeTable {
  static constexpr std::uint8_t kNever = 0xff;
  std::array<std::uint8_t, 16> min_reps{};

  /// RV 0 alone, RV 3 with any other repetition, or all of {1,2,3}.
  static RvDecodeTable standard();
  /// Any received repetition decodes.
  static RvDecodeTable any_received();

  bool decodable(unsigned rv_mask, int received) const {
    const auto need = min_reps[rv_mask & 0xf];
    return need != kNever && received >= need;
  }
  /// True when receiving more never makes a decodable set undecodable.
  bool monotone() const;
  friend bool operator==(const RvDecodeTable&, const RvDecodeTable&) = default;
};

enum class DecodeKind { AnySuccess, RvAware };

struct DecodeModel {
  DecodeKind kind = DecodeKind::AnySuccess;
  RvDecodeTable table = RvDecodeTable::standard();
  friend bool operator==(const DecodeModel&, const DecodeModel&) = default;
};

struct ChannelParams {
  double epsilon = 0.0;
  double shared_collision = 0.0;
  DecodeModel decode_model;
  friend bool operator==(const ChannelParams&, const ChannelParams&) = default;
};

struct RepOutcome {
  PlannedRep rep;
  bool received = false;
};

/// Slotted-ALOHA collision probability seen by one of N contenders that each
/// transmit with probability q: 1 - (1 - q)^(N - 1).
double collision_prob(int contenders, double q);

/// Independent reception draws. CG repetitions survive with probability
/// 1 - epsilon; shared ones additionally need to avoid a collision. Every
/// shared repetition consumes two draws and every CG repetition one, so the
/// outcome of repetition j does not depend on the channel parameters of the
/// others.
std::vector<RepOutcome> transmit(const TransmissionPlan& plan, const ChannelParams& params, RngStream& rng);

struct DecodeResult {
  bool decoded = false;
  Slot slot = 0;  // slot of the repetition that completed decoding
  friend bool operator==(const DecodeResult&, const DecodeResult&) = default;
};

/// Outcomes must be in slot order.
DecodeResult decode(const std::vector<RepOutcome>& outcomes, const DecodeModel& model);

}  // namespace cgsim
