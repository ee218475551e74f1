#include "cgsim/cli.hpp"

#include <fstream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "cgsim/analytics.hpp"
#include "cgsim/engine.hpp"
#include "cgsim/report.hpp"
#include "cgsim/scenario.hpp"

namespace cgsim {

namespace {

struct Options {
  std::string command;
  std::string scenario_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::int64_t> packets;
  std::optional<int> threads;
  std::string out_path;
  std::string format = "table";
  std::vector<std::string> sweeps;
  std::optional<double> target;
  std::optional<int> r_max;
  bool k_tracks_t = false;
};

void apply_overrides(Scenario& s, const Options& o) {
  if (o.seed) s.master_seed = *o.seed;
  if (o.packets) s.packets = *o.packets;
  if (o.threads) s.threads = *o.threads;
  if (auto v = scenario_violations(s); !v.empty()) throw Error(v.front());
}

void cmd_simulate(const Scenario& s, Format fmt, std::ostream& out) {
  emit_report(out, {ReportRow{run(s), std::nullopt}}, fmt);
}

void cmd_analyze(const Scenario& s, Format fmt, std::ostream& out) {
  emit_reliability(out, s, reliability_exact(s.config, s.traffic, s.channel), fmt);
}

void cmd_dimension(const Scenario& s, const Options& o, Format fmt, std::ostream& out) {
  if (!o.target) throw Error("dimension needs --target");
  const int r_max = o.r_max.value_or(s.config.period_slots);
  const DimensionResult d = dimension_tos(s.config, s.traffic, s.channel, *o.target, r_max, o.k_tracks_t);
  const std::string below = d.reliability_below ? format_real(*d.reliability_below) : "";
  switch (fmt) {
    case Format::Table:
      out << d.tos << "\n";
      break;
    case Format::Csv:
      out << "T,reliability,reliability_below\n" << d.tos << "," << format_real(d.reliability) << "," << below << "\n";
      break;
    case Format::JsonLines:
      out << "{\"T\":" << d.tos << ",\"reliability\":" << format_real(d.reliability)
          << ",\"reliability_below\":" << (below.empty() ? "null" : below) << "}\n";
      break;
  }
}

void cmd_wastage(const Scenario& s, Format fmt, std::ostream& out) {
  const ArrivalPmf pmf = arrival_pmf(s.traffic, s.config);
  const double w = expected_wastage(pmf.p_o, pmf.p, s.config.to_count());
  switch (fmt) {
    case Format::Table:
      out << format_real(w) << "\n";
      break;
    case Format::Csv:
      out << "expected_wastage\n" << format_real(w) << "\n";
      break;
    case Format::JsonLines:
      out << "{\"expected_wastage\":" << format_real(w) << "}\n";
      break;
  }
}

void cmd_sweep(const Scenario& base, const Options& o, Format fmt, std::ostream& out, std::ostream& err) {
  if (o.sweeps.empty()) throw Error("sweep needs at least one --sweep param=values");
  std::vector<SweepSpec> specs;
  for (const auto& text : o.sweeps) specs.push_back(parse_sweep(text));

  // Cartesian product, first sweep varying slowest.
  std::vector<Scenario> grid = {base};
  for (const auto& spec : specs) {
    std::vector<Scenario> next;
    for (const auto& s : grid) {
      for (double v : spec.values) next.push_back(apply_sweep(s, spec.parameter, v));
    }
    grid = std::move(next);
  }

  std::vector<ReportRow> rows;
  bool noted = false;
  for (auto& s : grid) {
    ReportRow row{run(s), std::nullopt};
    try {
      row.analytic = reliability_exact(s.config, s.traffic, s.channel).reliability;
    } catch (const Error& e) {
      if (!noted) err << "note: analytic oracle unavailable (" << e.what() << "); simulation only\n";
      noted = true;
    }
    rows.push_back(std::move(row));
  }
  emit_report(out, rows, fmt, true);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Configured-grant repetition scheduling simulator", "cgsim"};
  Options o;
  app.add_option("command", o.command, "simulate | analyze | dimension | wastage | sweep")
      ->required()
      ->check(CLI::IsMember({"simulate", "analyze", "dimension", "wastage", "sweep"}));
  app.add_option("--scenario", o.scenario_path, "Scenario file")->required();
  app.add_option("--seed", o.seed, "Master seed (overrides [sim] seed)");
  app.add_option("--packets", o.packets, "Simulated periods (overrides [sim] packets)");
  app.add_option("--threads", o.threads, "OpenMP threads (0 = runtime default)");
  app.add_option("--out", o.out_path, "Write output to this file instead of stdout");
  app.add_option("--format", o.format, "csv | json-lines | table")
      ->check(CLI::IsMember({"csv", "json-lines", "table"}));
  app.add_option("--sweep", o.sweeps, "param=v1,v2,... or param=start:stop:step (repeatable)");
  app.add_option("--target", o.target, "Reliability target for dimension");
  app.add_option("--r-max", o.r_max, "Largest TO count tried by dimension (default: period)");
  app.add_flag("--k-tracks-t", o.k_tracks_t, "Dimension with K = T instead of a fixed K");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    Scenario s = load_scenario(o.scenario_path);
    apply_overrides(s, o);
    const Format fmt = parse_format(o.format);
    std::ostringstream buf;
    if (o.command == "simulate") {
      cmd_simulate(s, fmt, buf);
    } else if (o.command == "analyze") {
      cmd_analyze(s, fmt, buf);
    } else if (o.command == "dimension") {
      cmd_dimension(s, o, fmt, buf);
    } else if (o.command == "wastage") {
      cmd_wastage(s, fmt, buf);
    } else {
      cmd_sweep(s, o, fmt, buf, err);
    }
    if (o.out_path.empty()) {
      out << buf.str();
    } else {
      std::ofstream file(o.out_path, std::ios::binary);
      if (!file || !(file << buf.str()) || !file.flush()) throw Error("cannot write '" + o.out_path + "'");
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace cgsim
