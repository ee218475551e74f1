#include "cgsim/stats.hpp"

#include <algorithm>
#include <cmath>

#include "cgsim/model.hpp"

namespace cgsim {

Interval wilson_ci(std::int64_t successes, std::int64_t trials, double z) {
  if (trials <= 0) throw Error("wilson_ci: trials must be positive");
  if (successes < 0 || successes > trials) throw Error("wilson_ci: successes outside [0, trials]");
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = (p + z2 / (2.0 * n)) / denom;
  const double half = z / denom * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n));
  Interval ci{std::max(0.0, center - half), std::min(1.0, center + half)};
  // Rounding can leave the boundary estimates a hair outside the interval.
  if (successes == 0) ci.lo = 0.0;
  if (successes == trials) ci.hi = 1.0;
  return ci;
}

std::int64_t percentile_sorted(const std::vector<std::int64_t>& sorted, double q) {
  if (sorted.empty()) throw Error("percentile: empty samples");
  if (!(q > 0.0 && q <= 1.0)) throw Error("percentile: q must lie in (0, 1]");
  const auto n = static_cast<double>(sorted.size());
  auto rank = static_cast<std::size_t>(std::ceil(q * n - 1e-9));
  rank = std::clamp<std::size_t>(rank, 1, sorted.size());
  return sorted[rank - 1];
}

std::int64_t percentile(std::vector<std::int64_t> samples, double q) {
  std::sort(samples.begin(), samples.end());
  return percentile_sorted(samples, q);
}

}  // namespace cgsim
