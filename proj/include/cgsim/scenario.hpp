#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "cgsim/engine.hpp"

namespace cgsim {

/// Scenario file problem, tagged with the 1-based line it refers to (0 when
/// the problem is not tied to a line).
class ParseError : public Error {
 public:
  ParseError(int line, const std::string& message)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + message : message), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

/// Parses the sectioned `key = value` scenario format and validates the
/// result. Sections: [config] [traffic] [channel] [shared] [sim] [multi.N].
/// `#` starts a comment and lists are comma-separated.
///
/// Defaults: latency_budget = period, packets = 100000, seed = 1,
/// decode = any_success, deferral = 1, gap = 0, start = 0, slot_ms = 1,
/// ci_z = 1.96, threads = 0, lbt_delay = 0.
Scenario parse_scenario(std::string_view text);

Scenario load_scenario(const std::string& path);

/// Canonical text form; parse_scenario(to_scenario_text(s)) == s.
std::string to_scenario_text(const Scenario& scenario);

/// One swept parameter and its values.
struct SweepSpec {
  std::string parameter;
  std::vector<double> values;
};

/// "param=v1,v2,..." or "param=start:stop:step" (inclusive stop).
SweepSpec parse_sweep(std::string_view text);

/// Parameters accepted by apply_sweep().
const std::vector<std::string>& sweepable_parameters();

/// Copy of `base` with one parameter replaced, re-resolved and re-validated.
/// Throws Error for unknown parameters, non-integral values of integer
/// parameters, or an invalid resulting scenario.
Scenario apply_sweep(const Scenario& base, const std::string& parameter, double value);

}  // namespace cgsim
