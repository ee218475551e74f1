#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace cgsim {

struct Interval {
  double lo = 0.0;
  double hi = 1.0;
  friend bool operator==(const Interval&, const Interval&) = default;
};

/// Wilson score interval for a binomial proportion, clamped to [0, 1].
/// Throws Error when trials is zero or successes exceeds trials.
Interval wilson_ci(std::int64_t successes, std::int64_t trials, double z);

/// Nearest-rank percentile: element ceil(q * n) (1-based) of the ascending
/// order. Throws Error on empty input or q outside (0, 1].
std::int64_t percentile(std::vector<std::int64_t> samples, double q);

/// Same as percentile() for input that is already sorted ascending.
std::int64_t percentile_sorted(const std::vector<std::int64_t>& sorted, double q);

}  // namespace cgsim
