#include "cgsim/model.hpp"

#include <cmath>

namespace cgsim {

namespace {

bool is_probability(double p) { return std::isfinite(p) && p >= 0.0 && p <= 1.0; }

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};

void add(std::vector<Violation>& out, std::string field, std::string message) {
  out.push_back({std::move(field), std::move(message)});
}

}  // namespace

bool operator==(const MultiConfig& a, const MultiConfig& b) { return a.configs == b.configs; }

std::vector<std::string> RvPattern::violations() const {
  std::vector<std::string> out;
  if (ids_.empty()) {
    out.push_back("rv pattern is empty");
    return out;
  }
  for (int id : ids_) {
    if (id < 0 || id > 3) out.push_back("rv " + std::to_string(id) + " not in {0,1,2,3}");
  }
  if (ids_.front() != 0) out.push_back("rv pattern must start with rv 0");
  return out;
}

std::vector<std::string> SharedParams::violations() const {
  std::vector<std::string> out;
  if (lbt_delay_slots < 0) out.push_back("lbt delay is negative");
  const bool has_pair = contenders.has_value() || tx_prob.has_value();
  if (collision_prob.has_value() == has_pair) {
    out.push_back("exactly one of collision probability or (contenders, tx probability) must be set");
  }
  if (collision_prob && !is_probability(*collision_prob)) out.push_back("probability out of range");
  if (has_pair) {
    if (!contenders || !tx_prob) {
      out.push_back("contenders and tx probability must be given together");
    } else {
      if (*contenders < 1) out.push_back("contenders must be at least 1");
      if (!is_probability(*tx_prob)) out.push_back("probability out of range");
    }
  }
  return out;
}

double SharedParams::effective_collision() const {
  if (collision_prob) return *collision_prob;
  if (contenders && tx_prob) return 1.0 - std::pow(1.0 - *tx_prob, *contenders - 1);
  return 0.0;
}

std::string scheme_name(const SchemeKind& scheme) {
  return std::visit(Overloaded{
                        [](const BaselineFirstTo&) { return std::string("first_to"); },
                        [](const BaselineStartAtRv0&) { return std::string("start_rv0"); },
                        [](const FlexibleOffset&) { return std::string("flexible"); },
                        [](const SharedAssist&) { return std::string("shared"); },
                        [](const MultiConfig&) { return std::string("multi"); },
                    },
                    scheme);
}

std::vector<Violation> validate_config(const CgConfig& config) {
  std::vector<Violation> out;
  const int period = config.period_slots;
  if (period < 1) add(out, "period", "period must be positive");

  if (config.to_offsets.empty()) add(out, "offsets", "at least one TO offset is required");
  for (std::size_t i = 0; i < config.to_offsets.size(); ++i) {
    const int off = config.to_offsets[i];
    if (off < 0) add(out, "offsets", "offset " + std::to_string(off) + " is negative");
    if (period >= 1 && off >= period) {
      add(out, "offsets",
          "offset " + std::to_string(off) + " ≥ period " + std::to_string(period));
    }
    if (i > 0 && off <= config.to_offsets[i - 1]) add(out, "offsets", "offsets must be strictly increasing");
  }

  if (config.rep_count < 1) add(out, "k", "K must be positive");
  if (config.rep_count > config.to_count()) add(out, "k", "K exceeds T");
  for (auto& msg : config.rv_pattern.violations()) add(out, "pattern", msg);
  if (config.latency_budget_slots < 1) add(out, "latency_budget", "latency budget must be positive");
  if (config.max_periods_deferral < 0) add(out, "deferral", "deferral must be non-negative");
  for (int r : config.availability_mask) {
    if (r < 0 || (period >= 1 && r >= period)) {
      add(out, "mask", "mask residue " + std::to_string(r) + " outside [0, period)");
    }
  }

  if (const auto* shared = std::get_if<SharedAssist>(&config.scheme)) {
    for (auto& msg : shared->shared.violations()) add(out, "shared", msg);
    if (config.to_count() != config.rep_count) add(out, "scheme", "shared assist requires T = K");
  }
  if (const auto* multi = std::get_if<MultiConfig>(&config.scheme)) {
    if (multi->configs.size() < 2) add(out, "scheme", "multi-config needs at least 2 member configs");
    std::set<int> firsts;
    for (std::size_t m = 0; m < multi->configs.size(); ++m) {
      const auto& member = multi->configs[m];
      const std::string prefix = "multi." + std::to_string(m);
      if (std::holds_alternative<MultiConfig>(member.scheme)) {
        add(out, prefix, "member config must not itself be multi-config");
        continue;
      }
      for (auto& v : validate_config(member)) add(out, prefix + "." + v.field, v.message);
      if (member.period_slots != period) add(out, prefix, "member period differs from period");
      if (!member.to_offsets.empty() && !firsts.insert(member.to_offsets.front()).second) {
        add(out, prefix, "member first-TO offsets must be distinct");
      }
    }
  }
  return out;
}

std::vector<int> generate_offsets(int count, int gap, int start) {
  std::vector<int> out;
  out.reserve(count > 0 ? count : 0);
  for (int j = 0; j < count; ++j) out.push_back(start + j * (gap + 1));
  return out;
}

std::vector<PeriodTo> tos_in_period(const CgConfig& config, std::int64_t period_index) {
  std::vector<PeriodTo> out;
  out.reserve(config.to_offsets.size());
  const Slot base = period_index * config.period_slots;
  for (std::size_t i = 0; i < config.to_offsets.size(); ++i) {
    const int off = config.to_offsets[i];
    if (config.availability_mask.contains(off)) continue;
    out.push_back({base + off, static_cast<int>(i)});
  }
  return out;
}

}  // namespace cgsim
