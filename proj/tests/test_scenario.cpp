#include <doctest.h>

#include <random>

#include "cgsim/scenario.hpp"

using namespace cgsim;

namespace {

constexpr const char* kMinimal = R"(# minimal flexible scenario
[config]
period = 10
offsets = 0,1,2,3
k = 4
pattern = 0,2,3,1
scheme = flexible

[traffic]
kind = uniform
lo = 0
hi = 3

[channel]
epsilon = 0.1
)";

std::string with_line(std::string text, const std::string& from, const std::string& to) {
  const auto pos = text.find(from);
  REQUIRE(pos != std::string::npos);
  return text.replace(pos, from.size(), to);
}

int error_line(const std::string& text) {
  try {
    parse_scenario(text);
  } catch (const ParseError& e) {
    return e.line();
  }
  FAIL("expected a parse error");
  return -1;
}

}  // namespace

TEST_CASE("minimal scenario takes documented defaults") {
  const Scenario s = parse_scenario(kMinimal);
  CHECK(s.config.period_slots == 10);
  CHECK(s.config.to_offsets == std::vector<int>{0, 1, 2, 3});
  CHECK(s.config.rep_count == 4);
  CHECK(s.config.rv_pattern == RvPattern::full());
  CHECK(std::holds_alternative<FlexibleOffset>(s.config.scheme));
  CHECK(s.config.latency_budget_slots == 10);
  CHECK(s.config.max_periods_deferral == 1);
  CHECK(s.config.availability_mask.empty());
  CHECK(s.traffic == TrafficModel{UniformOverSlots{0, 3}});
  CHECK(s.channel.epsilon == 0.1);
  CHECK(s.channel.decode_model.kind == DecodeKind::AnySuccess);
  CHECK(s.packets == 100000);
  CHECK(s.master_seed == 1);
  CHECK(s.gap == 0);
}

TEST_CASE("probability out of range is reported with its line") {
  const auto text = with_line(kMinimal, "epsilon = 0.1", "epsilon = 1.5");
  CHECK_THROWS_WITH(parse_scenario(text), "line 15: probability out of range");
}

TEST_CASE("validation failures carry the line of the offending key") {
  const auto text = with_line(kMinimal, "k = 4", "k = 5");
  CHECK_THROWS_WITH(parse_scenario(text), "line 5: K exceeds T");
  CHECK(error_line(with_line(kMinimal, "offsets = 0,1,2,3", "offsets = 0,1,2,12")) == 4);
  CHECK(error_line(with_line(kMinimal, "pattern = 0,2,3,1", "pattern = 1,2")) == 6);
  CHECK(error_line(with_line(kMinimal, "hi = 3", "hi = 30")) == 10);
}

TEST_CASE("syntax errors") {
  CHECK(error_line(with_line(kMinimal, "k = 4", "k = four")) == 5);
  CHECK(error_line(with_line(kMinimal, "k = 4", "k = 4\nbogus = 1")) == 6);
  CHECK(error_line(with_line(kMinimal, "k = 4", "k = 4\nk = 4")) == 6);
  CHECK(error_line(with_line(kMinimal, "[channel]", "[chanel]")) == 14);
  CHECK(error_line(with_line(kMinimal, "k = 4", "k 4")) == 5);
  CHECK(error_line(with_line(kMinimal, "scheme = flexible", "scheme = fancy")) == 7);
  CHECK_THROWS_AS(parse_scenario("[config]\nperiod = 10\n"), ParseError);
}

TEST_CASE("tos and gap generate the offsets") {
  auto text = with_line(kMinimal, "offsets = 0,1,2,3", "tos = 4\ngap = 1\nstart = 1");
  const Scenario s = parse_scenario(text);
  CHECK(s.config.to_offsets == std::vector<int>{1, 3, 5, 7});
  CHECK(s.gap == 1);
  CHECK_THROWS_AS(parse_scenario(with_line(kMinimal, "k = 4", "k = 4\ntos = 4")), ParseError);
}

TEST_CASE("shared and multi sections") {
  auto shared = with_line(kMinimal, "scheme = flexible", "scheme = shared\n[shared]\ncontenders = 5\ntx_prob = 0.2");
  Scenario s = parse_scenario(shared);
  CHECK(s.channel.shared_collision == doctest::Approx(0.5904).epsilon(1e-12));

  auto both = with_line(shared, "tx_prob = 0.2", "tx_prob = 0.2\ncollision = 0.1");
  CHECK_THROWS_AS(parse_scenario(both), ParseError);

  auto stray = with_line(kMinimal, "[traffic]", "[shared]\ncollision = 0.1\n[traffic]");
  CHECK_THROWS_AS(parse_scenario(stray), ParseError);

  auto multi = with_line(kMinimal, "scheme = flexible",
                         "scheme = multi\n[multi.0]\noffsets = 0,1,2,3\n[multi.1]\noffsets = 5,6,7,8\nscheme = start_rv0");
  s = parse_scenario(multi);
  const auto& m = std::get<MultiConfig>(s.config.scheme);
  REQUIRE(m.configs.size() == 2);
  CHECK(std::holds_alternative<BaselineFirstTo>(m.configs[0].scheme));
  CHECK(std::holds_alternative<BaselineStartAtRv0>(m.configs[1].scheme));
  CHECK(m.configs[1].to_offsets == std::vector<int>{5, 6, 7, 8});
  CHECK(m.configs[1].latency_budget_slots == 10);

  auto gap_in_numbering = with_line(multi, "[multi.1]", "[multi.2]");
  CHECK_THROWS_AS(parse_scenario(gap_in_numbering), ParseError);
}

TEST_CASE("canonical text round-trips") {
  std::mt19937 gen(3);
  const char* schemes[] = {"first_to", "start_rv0", "flexible", "shared", "multi"};
  const char* traffic[] = {"kind = always\nslot = 2", "kind = uniform\nlo = 1\nhi = 8", "kind = geometric\ngamma = 2.75",
                           "kind = pmf\np_o = 0.1\np = 0.3,0.2,0.15,0.25"};
  for (int trial = 0; trial < 60; ++trial) {
    const std::string scheme = schemes[gen() % 5];
    std::string text = "[config]\nperiod = 12\ntos = 4\ngap = " + std::to_string(gen() % 3) +
                       "\nk = 4\npattern = 0,3,0,3\nscheme = " + scheme + "\nmask = 5\nlatency_budget = " +
                       std::to_string(5 + gen() % 20) + "\ndeferral = " + std::to_string(gen() % 3) + "\n";
    if (scheme == "shared") text += "[shared]\nlbt_delay = 1\ncollision = 0.123456789012345\n";
    if (scheme == "multi") text += "[multi.0]\noffsets = 0,1\nk = 2\n[multi.1]\noffsets = 6,7\nk = 1\nscheme = flexible\n";
    text += std::string("[traffic]\n") + traffic[gen() % 4] + "\n[channel]\nepsilon = 0.0731\n";
    if (gen() % 2) text += "decode = rv_aware\nrv_table = -,1,1,1,1,1,1,1,2,1,1,1,1,1,1,1\n";
    text += "[sim]\nid = run" + std::to_string(trial) + "\npackets = 777\nseed = 18446744073709551615\nslot_ms = 0.125\n";
    const Scenario s = parse_scenario(text);
    const std::string canonical = to_scenario_text(s);
    CHECK(parse_scenario(canonical) == s);
    CHECK(to_scenario_text(parse_scenario(canonical)) == canonical);
  }
}

TEST_CASE("sweep specs") {
  auto spec = parse_sweep("channel.epsilon=0.05,0.1,0.2");
  CHECK(spec.parameter == "channel.epsilon");
  CHECK(spec.values == std::vector<double>{0.05, 0.1, 0.2});
  spec = parse_sweep("config.T=4:8:1");
  CHECK(spec.values == std::vector<double>{4, 5, 6, 7, 8});
  spec = parse_sweep("channel.epsilon=0.1:0.5:0.1");
  CHECK(spec.values.size() == 5);
  CHECK_THROWS_AS(parse_sweep("channel.nope=1"), Error);
  CHECK_THROWS_AS(parse_sweep("channel.epsilon"), Error);
  CHECK_THROWS_AS(parse_sweep("config.T=8:4:1"), Error);
}

TEST_CASE("apply_sweep rewrites one parameter") {
  const Scenario base = parse_scenario(kMinimal);
  CHECK(apply_sweep(base, "channel.epsilon", 0.3).channel.epsilon == 0.3);
  const Scenario t6 = apply_sweep(base, "config.T", 6);
  CHECK(t6.config.to_offsets == std::vector<int>{0, 1, 2, 3, 4, 5});
  const Scenario g2 = apply_sweep(base, "config.gap", 2);
  CHECK(g2.config.to_offsets == std::vector<int>{0, 3, 6, 9});
  CHECK(g2.gap == 2);
  CHECK(apply_sweep(base, "config.latency_budget", 4).config.latency_budget_slots == 4);
  CHECK_THROWS_AS(apply_sweep(base, "config.T", 3), Error);    // K exceeds T
  CHECK_THROWS_AS(apply_sweep(base, "config.T", 4.5), Error);  // not integral
  CHECK_THROWS_AS(apply_sweep(base, "shared.collision", 0.1), Error);
  CHECK_THROWS_AS(apply_sweep(base, "channel.epsilon", 2.0), Error);
}
