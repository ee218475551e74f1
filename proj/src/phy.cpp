#include "cgsim/phy.hpp"

#include <cmath>

namespace cgsim {

RvDecodeTable RvDecodeTable::standard() {
  RvDecodeTable t;
  for (unsigned m = 0; m < 16; ++m) {
    if (m & 0b0001u) {
      t.min_reps[m] = 1;
    } else if (m & 0b1000u) {
      t.min_reps[m] = 2;
    } else {
      t.min_reps[m] = kNever;  // only RVs 1 and 2 received
    }
  }
  return t;
}

RvDecodeTable RvDecodeTable::any_received() {
  RvDecodeTable t;
  t.min_reps.fill(1);
  t.min_reps[0] = kNever;
  return t;
}

bool RvDecodeTable::monotone() const {
  for (unsigned m = 1; m < 16; ++m) {
    for (unsigned sub = (m - 1) & m; sub != 0; sub = (sub - 1) & m) {
      if (min_reps[sub] != kNever && min_reps[m] > min_reps[sub]) return false;
    }
  }
  return true;
}

double collision_prob(int contenders, double q) {
  if (contenders <= 1) return 0.0;
  return 1.0 - std::pow(1.0 - q, contenders - 1);
}

std::vector<RepOutcome> transmit(const TransmissionPlan& plan, const ChannelParams& params, RngStream& rng) {
  std::vector<RepOutcome> out;
  out.reserve(plan.repetitions.size());
  for (const auto& rep : plan.repetitions) {
    bool ok = true;
    if (rep.resource == Resource::Shared) ok = rng.uniform() >= params.shared_collision;
    ok = (rng.uniform() >= params.epsilon) && ok;
    out.push_back({rep, ok});
  }
  return out;
}

DecodeResult decode(const std::vector<RepOutcome>& outcomes, const DecodeModel& model) {
  unsigned mask = 0;
  int received = 0;
  for (const auto& o : outcomes) {
    if (!o.received) continue;
    if (model.kind == DecodeKind::AnySuccess) return {true, o.rep.slot};
    mask |= 1u << o.rep.rv;
    ++received;
    if (model.table.decodable(mask, received)) return {true, o.rep.slot};
  }
  return {};
}

}  // namespace cgsim
