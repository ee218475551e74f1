#include "cgsim/report.hpp"

#include <algorithm>
#include <cstdio>
#include <iomanip>

#include <json.hpp>

namespace cgsim {

std::string format_real(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

Format parse_format(std::string_view name) {
  if (name == "csv") return Format::Csv;
  if (name == "json-lines") return Format::JsonLines;
  if (name == "table") return Format::Table;
  throw Error("unknown format '" + std::string(name) + "'");
}

const std::vector<std::string>& report_columns() {
  static const std::vector<std::string> cols = {
      "scenario_id",       "scheme",           "T",                 "K",
      "gap",               "epsilon",          "collision",         "packets",
      "seed",              "reliability",      "ci_lo",             "ci_hi",
      "latency_p50_slots", "latency_p99_slots", "latency_p99_ms",   "mean_wastage_tos",
      "tos_per_period",    "shared_reps_used",
  };
  return cols;
}

std::vector<std::string> report_fields(const SimReport& r) {
  return {
      r.scenario_id,
      r.scheme,
      std::to_string(r.tos),
      std::to_string(r.rep_count),
      std::to_string(r.gap),
      format_real(r.epsilon),
      format_real(r.collision),
      std::to_string(r.packets),
      std::to_string(r.seed),
      format_real(r.reliability),
      format_real(r.ci.lo),
      format_real(r.ci.hi),
      format_real(r.latency_slots.p50),
      format_real(r.latency_slots.p99),
      format_real(r.latency_ms.p99),
      format_real(r.mean_wastage_tos),
      std::to_string(r.tos_allocated_per_period),
      std::to_string(r.shared_reps_used),
  };
}

namespace {

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

void write_csv_line(std::ostream& out, const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) out << (i ? "," : "") << csv_escape(fields[i]);
  out << "\n";
}

// Numbers stay numbers in JSON; identifiers stay strings.
nlohmann::ordered_json to_json(const std::vector<std::string>& names, const std::vector<std::string>& fields) {
  nlohmann::ordered_json j;
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (names[i] == "scenario_id" || names[i] == "scheme") {
      j[names[i]] = fields[i];
    } else if (fields[i].empty()) {
      j[names[i]] = nullptr;
    } else {
      j[names[i]] = nlohmann::ordered_json::parse(fields[i]);
    }
  }
  return j;
}

void write_table(std::ostream& out, const std::vector<std::string>& names,
                 const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width(names.size());
  for (std::size_t c = 0; c < names.size(); ++c) {
    width[c] = names[c].size();
    for (const auto& row : rows) width[c] = std::max(width[c], row[c].size());
  }
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t c = 0; c < cells.size(); ++c) {
      out << (c ? "  " : "") << std::left << std::setw(static_cast<int>(width[c])) << cells[c];
    }
    out << "\n";
  };
  line(names);
  for (const auto& row : rows) line(row);
}

}  // namespace

void emit_report(std::ostream& out, const std::vector<ReportRow>& rows, Format format, bool analytic_column) {
  std::vector<std::string> names = report_columns();
  if (analytic_column) names.push_back("analytic_reliability");
  std::vector<std::vector<std::string>> table;
  for (const auto& row : rows) {
    auto fields = report_fields(row.sim);
    if (analytic_column) fields.push_back(row.analytic ? format_real(*row.analytic) : "");
    table.push_back(std::move(fields));
  }
  switch (format) {
    case Format::Csv:
      write_csv_line(out, names);
      for (const auto& f : table) write_csv_line(out, f);
      break;
    case Format::JsonLines:
      for (const auto& f : table) out << to_json(names, f).dump() << "\n";
      break;
    case Format::Table:
      write_table(out, names, table);
      break;
  }
  if (!out) throw Error("failed to write report");
}

void emit_reliability(std::ostream& out, const Scenario& s, const ReliabilityResult& result, Format format) {
  const std::vector<std::string> names = {"scenario_id", "scheme", "T", "K", "epsilon", "collision", "reliability"};
  const std::vector<std::string> fields = {s.id,
                                           scheme_name(s.config.scheme),
                                           std::to_string(s.config.to_count()),
                                           std::to_string(s.config.rep_count),
                                           format_real(s.channel.epsilon),
                                           format_real(s.channel.shared_collision),
                                           format_real(result.reliability)};
  const std::vector<std::string> detail_names = {"arrival_offset", "to_index", "probability",
                                                 "cg_reps",        "shared_reps", "success"};
  std::vector<std::vector<std::string>> details;
  for (const auto& row : result.per_arrival) {
    details.push_back({std::to_string(row.arrival_offset), row.to_index ? std::to_string(*row.to_index) : "",
                       format_real(row.probability), std::to_string(row.cg_reps), std::to_string(row.shared_reps),
                       format_real(row.success)});
  }
  switch (format) {
    case Format::Csv:
      write_csv_line(out, names);
      write_csv_line(out, fields);
      break;
    case Format::JsonLines: {
      auto j = to_json(names, fields);
      auto& arr = j["per_arrival"] = nlohmann::ordered_json::array();
      for (const auto& d : details) arr.push_back(to_json(detail_names, d));
      out << j.dump() << "\n";
      break;
    }
    case Format::Table:
      write_table(out, names, {fields});
      out << "\n";
      write_table(out, detail_names, details);
      break;
  }
  if (!out) throw Error("failed to write report");
}

}  // namespace cgsim
