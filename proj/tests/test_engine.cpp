#include <doctest.h>

#include <cmath>

#include "cgsim/analytics.hpp"
#include "cgsim/engine.hpp"
#include "fixtures.hpp"

using namespace cgsim;
using cgsim::testing::iota_offsets;
using cgsim::testing::make_config;

namespace {

Scenario basic(double eps, TrafficModel traffic = AlwaysAtSlot{0}, std::int64_t packets = 20000) {
  Scenario s;
  s.config = make_config(10, {0, 1, 2, 3}, 4, RvPattern::full(), FlexibleOffset{});
  s.traffic = traffic;
  s.channel.epsilon = eps;
  s.packets = packets;
  return s;
}

void check_report_invariants(const SimReport& r) {
  CHECK(r.ci.lo <= r.reliability);
  CHECK(r.reliability <= r.ci.hi);
  CHECK(r.delivered <= r.attempted);
  CHECK(r.latency_slots.p50 <= r.latency_slots.p90);
  CHECK(r.latency_slots.p90 <= r.latency_slots.p99);
  CHECK(r.latency_slots.p99 <= r.latency_slots.max);
}

}  // namespace

TEST_CASE("error-free channel decodes on the first repetition") {
  const auto r = run(basic(0.0));
  CHECK(r.reliability == 1.0);
  CHECK(r.delivered == r.attempted);
  CHECK(r.latency_slots.p50 == 1);
  CHECK(r.latency_slots.max == 1);
  check_report_invariants(r);
}

TEST_CASE("certain loss delivers nothing") {
  const auto r = run(basic(1.0));
  CHECK(r.reliability == 0.0);
  CHECK(r.delivered == 0);
  CHECK(r.attempted == 20000);
  check_report_invariants(r);
}

TEST_CASE("latency in milliseconds scales with the slot duration") {
  auto s = basic(0.5, UniformOverSlots{0, 3});
  s.slot_duration_ms = 0.125;
  const auto r = run(s);
  CHECK(r.latency_ms.p99 == r.latency_slots.p99 * 0.125);
  CHECK(r.latency_ms.max == r.latency_slots.max * 0.125);
  check_report_invariants(r);
}

TEST_CASE("FlexibleOffset T=6 K=4 simulation agrees with the exact value") {
  Scenario s = basic(0.1, UniformOverSlots{0, 5}, 1000000);
  s.config = make_config(10, iota_offsets(6), 4, RvPattern::full(), FlexibleOffset{});
  const auto r = run(s);
  const double exact = reliability_exact(s.config, s.traffic, s.channel).reliability;
  const auto ci99 = wilson_ci(r.delivered, r.attempted, 2.5758293035489);
  CHECK(ci99.lo <= exact);
  CHECK(exact <= ci99.hi);
}

TEST_CASE("serial and parallel drivers agree bit for bit") {
  SharedParams sp;
  sp.contenders = 4;
  sp.tx_prob = 0.1;
  Scenario s = basic(0.2, GeometricDelay{2.0}, 30000);
  s.config = make_config(10, {0, 2, 4, 6}, 4, RvPattern::full(), SharedAssist{sp}, 14);
  resolve_shared_collision(s);
  CHECK(s.channel.shared_collision == doctest::Approx(1 - 0.9 * 0.9 * 0.9));
  const auto reference = run_serial(s);
  check_report_invariants(reference);
  CHECK(reference.shared_reps_used > 0);
  for (int threads : {1, 2, 3, 8}) CHECK(run(s, threads) == reference);
  CHECK(run(s) == reference);
}

TEST_CASE("seed controls the replay") {
  auto s = basic(0.3, UniformOverSlots{0, 9});
  CHECK(run(s) == run(s));
  auto other = s;
  other.master_seed = 2;
  CHECK_FALSE(run(other) == run(s));
}

TEST_CASE("mean wastage converges to the formula") {
  auto s = basic(0.1, GeometricDelay{3.0}, 100000);
  const auto r = run(s);
  const auto pmf = arrival_pmf(s.traffic, s.config);
  const double expected = expected_wastage(pmf.p_o, pmf.p, 4);
  double second = pmf.p_o * 16;
  for (int i = 1; i <= 4; ++i) second += pmf.p[i - 1] * (i - 1) * (i - 1);
  const double se = std::sqrt((second - expected * expected) / 100000);
  CHECK(std::abs(r.mean_wastage_tos - expected) <= 3 * se);
  CHECK(r.attempted < r.packets);
}

TEST_CASE("a longer latency budget never lowers measured reliability") {
  for (auto scheme : {SchemeKind{BaselineFirstTo{}}, SchemeKind{BaselineStartAtRv0{}}, SchemeKind{FlexibleOffset{}}}) {
    auto s = basic(0.3, UniformOverSlots{0, 9}, 20000);
    s.config.scheme = scheme;
    double previous = -1.0;
    for (int d = 1; d <= 25; ++d) {
      s.config.latency_budget_slots = d;
      const double r = run(s).reliability;
      CHECK(r >= previous);
      previous = r;
    }
  }
}

TEST_CASE("periods without an arrival count only toward wastage") {
  auto s = basic(0.1, ExplicitPmf{1.0, {}}, 1000);
  const auto r = run(s);
  CHECK(r.attempted == 0);
  CHECK(r.reliability == 0.0);
  CHECK(r.mean_wastage_tos == 4.0);
  check_report_invariants(r);
}

TEST_CASE("multi-config reports the TOs of every member") {
  Scenario s = basic(0.1, UniformOverSlots{0, 9});
  const auto a = make_config(10, {0, 1, 2, 3}, 4, RvPattern::full(), BaselineFirstTo{});
  const auto b = make_config(10, {5, 6, 7, 8}, 4, RvPattern::full(), BaselineFirstTo{});
  s.config.scheme = MultiConfig{{a, b}};
  const auto r = run(s);
  CHECK(r.tos_allocated_per_period == 8);
  CHECK(r.mean_wastage_tos >= 4.0);
  const double exact = reliability_exact(s.config, s.traffic, s.channel).reliability;
  const auto ci = wilson_ci(r.delivered, r.attempted, 3.0);
  CHECK(ci.lo <= exact);
  CHECK(exact <= ci.hi);
}

TEST_CASE("RvAware decoding in simulation matches enumeration") {
  auto s = basic(0.3, UniformOverSlots{0, 5}, 200000);
  s.config = make_config(10, iota_offsets(6), 4, RvPattern::full(), FlexibleOffset{});
  s.channel.decode_model = {DecodeKind::RvAware, RvDecodeTable::standard()};
  const auto r = run(s);
  const double exact = reliability_exact(s.config, s.traffic, s.channel).reliability;
  const auto ci = wilson_ci(r.delivered, r.attempted, 3.0);
  CHECK(ci.lo <= exact);
  CHECK(exact <= ci.hi);
}

TEST_CASE("invalid scenarios are rejected") {
  auto s = basic(0.1);
  s.config.rep_count = 5;
  CHECK_THROWS_AS(run(s), Error);
  CHECK_THROWS_AS(run_serial(s), Error);
  s = basic(1.5);
  CHECK_THROWS_AS(run(s), Error);
  s = basic(0.1);
  s.packets = 0;
  CHECK_THROWS_AS(run(s), Error);
}
