#pragma once

#include <numeric>
#include <vector>

#include "cgsim/model.hpp"

namespace cgsim::testing {

inline std::vector<int> iota_offsets(int count, int start = 0) {
  std::vector<int> v(count);
  std::iota(v.begin(), v.end(), start);
  return v;
}

inline CgConfig make_config(int period, std::vector<int> offsets, int k, RvPattern pattern, SchemeKind scheme,
                            int budget = -1, int deferral = 1) {
  CgConfig c;
  c.period_slots = period;
  c.to_offsets = std::move(offsets);
  c.rep_count = k;
  c.rv_pattern = std::move(pattern);
  c.scheme = std::move(scheme);
  c.latency_budget_slots = budget < 0 ? period : budget;
  c.max_periods_deferral = deferral;
  return c;
}

}  // namespace cgsim::testing
