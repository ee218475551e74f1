#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "cgsim/analytics.hpp"
#include "cgsim/engine.hpp"

namespace cgsim {

enum class Format { Csv, JsonLines, Table };

Format parse_format(std::string_view name);

/// Column names of a simulation report row, in output order.
const std::vector<std::string>& report_columns();

/// Field values of one report row as they appear in every format: integers
/// verbatim, reals with 6 significant digits.
std::vector<std::string> report_fields(const SimReport& report);

/// A simulation report with an optional analytic reliability column (sweeps).
struct ReportRow {
  SimReport sim;
  std::optional<double> analytic;
};

/// Writes the rows in the chosen format. With `analytic_column` the
/// analytic_reliability column is appended (left empty when unavailable).
void emit_report(std::ostream& out, const std::vector<ReportRow>& rows, Format format, bool analytic_column = false);

void emit_reliability(std::ostream& out, const Scenario& scenario, const ReliabilityResult& result, Format format);

std::string format_real(double v);

}  // namespace cgsim
