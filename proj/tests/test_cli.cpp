#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cgsim/cli.hpp"
#include "cgsim/report.hpp"

using namespace cgsim;

namespace {

struct Result {
  int status;
  std::string out;
  std::string err;
};

Result cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int status = run_cli(args, out, err);
  return {status, out.str(), err.str()};
}

std::string write_temp(const std::string& name, const std::string& text) {
  const auto path = std::filesystem::temp_directory_path() / ("cgsim_test_" + name);
  std::ofstream(path) << text;
  return path.string();
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream in(line);
  for (std::string f; std::getline(in, f, ',');) out.push_back(f);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

const std::string kAlways = R"([config]
period = 10
tos = 4
k = 4
pattern = 0,2,3,1
scheme = flexible
[traffic]
kind = always
slot = 0
[channel]
epsilon = 0.1
[sim]
packets = 5000
)";

const std::string kUniform = R"([config]
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
[sim]
packets = 20000
)";

}  // namespace

TEST_CASE("dimension prints the minimal TO count") {
  const auto path = write_temp("always.ini", kAlways);
  auto r = cli({"dimension", "--scenario", path, "--target", "0.9999", "--k-tracks-t"});
  CHECK(r.status == 0);
  CHECK(r.out == "4\n");
  r = cli({"dimension", "--scenario", path, "--target", "0.99", "--k-tracks-t", "--format", "csv"});
  CHECK(r.out == "T,reliability,reliability_below\n2,0.99,0.9\n");
  r = cli({"dimension", "--scenario", path, "--target", "0.9999999999", "--k-tracks-t", "--r-max", "5"});
  CHECK(r.status != 0);
  CHECK(r.err.find("infeasible") != std::string::npos);
}

TEST_CASE("wastage prints the formula value") {
  const auto path = write_temp("uniform.ini", kUniform);
  const auto r = cli({"wastage", "--scenario", path});
  CHECK(r.status == 0);
  CHECK(r.out == "1.5\n");
}

TEST_CASE("sweep over epsilon gives one decreasing row per value") {
  const auto path = write_temp("uniform_sweep.ini", kUniform);
  const auto r = cli({"sweep", "--scenario", path, "--sweep", "channel.epsilon=0.05,0.1,0.2", "--format", "csv"});
  REQUIRE(r.status == 0);
  const auto rows = lines(r.out);
  REQUIRE(rows.size() == 4);
  const auto header = split_csv(rows[0]);
  CHECK(header.back() == "analytic_reliability");
  const auto col = std::find(header.begin(), header.end(), "reliability") - header.begin();
  double previous = 2.0;
  for (int i = 1; i <= 3; ++i) {
    const double rel = std::stod(split_csv(rows[i])[col]);
    CHECK(rel < previous);
    previous = rel;
    CHECK_FALSE(split_csv(rows[i]).back().empty());
  }
}

TEST_CASE("sweep grid is the cartesian product") {
  const auto path = write_temp("uniform_grid.ini", kUniform);
  const auto r = cli({"sweep", "--scenario", path, "--sweep", "channel.epsilon=0.1,0.2", "--sweep",
                      "config.T=4:6:1", "--format", "csv", "--packets", "1000"});
  REQUIRE(r.status == 0);
  CHECK(lines(r.out).size() == 1 + 6);
}

TEST_CASE("simulate csv has exactly the report columns") {
  const auto path = write_temp("uniform_sim.ini", kUniform);
  const auto r = cli({"simulate", "--scenario", path, "--format", "csv"});
  REQUIRE(r.status == 0);
  const auto rows = lines(r.out);
  REQUIRE(rows.size() == 2);
  CHECK(split_csv(rows[0]) == report_columns());
  CHECK(split_csv(rows[1]).size() == report_columns().size());
}

TEST_CASE("table and json-lines carry the same fields as csv") {
  const auto path = write_temp("uniform_fmt.ini", kUniform);
  const auto csv = lines(cli({"simulate", "--scenario", path, "--format", "csv"}).out);
  const auto table = lines(cli({"simulate", "--scenario", path, "--format", "table"}).out);
  REQUIRE(table.size() == 2);
  std::istringstream header(table[0]), values(table[1]);
  std::vector<std::string> names, cells;
  for (std::string w; header >> w;) names.push_back(w);
  for (std::string w; values >> w;) cells.push_back(w);
  CHECK(names == split_csv(csv[0]));
  CHECK(cells == split_csv(csv[1]));

  const auto json = cli({"simulate", "--scenario", path, "--format", "json-lines"}).out;
  CHECK(lines(json).size() == 1);
  CHECK(json.find("\"scenario_id\":\"scenario\"") != std::string::npos);
  CHECK(json.find("\"reliability\":" + split_csv(csv[1])[9]) != std::string::npos);
}

TEST_CASE("analyze reports the exact reliability") {
  const auto path = write_temp("always_an.ini", kAlways);
  const auto r = cli({"analyze", "--scenario", path, "--format", "csv"});
  CHECK(r.status == 0);
  CHECK(lines(r.out).back().ends_with(",0.9999"));
}

TEST_CASE("overrides and output file") {
  const auto path = write_temp("uniform_out.ini", kUniform);
  const auto out_path = (std::filesystem::temp_directory_path() / "cgsim_test_out.csv").string();
  const auto r = cli({"simulate", "--scenario", path, "--format", "csv", "--seed", "9", "--packets", "300", "--out",
                      out_path});
  CHECK(r.status == 0);
  CHECK(r.out.empty());
  std::ifstream in(out_path);
  std::stringstream buf;
  buf << in.rdbuf();
  const auto row = split_csv(lines(buf.str())[1]);
  CHECK(row[7] == "300");
  CHECK(row[8] == "9");

  const auto bad = cli({"simulate", "--scenario", path, "--out", "/nonexistent/dir/x.csv"});
  CHECK(bad.status != 0);
}

TEST_CASE("errors give a nonzero status") {
  CHECK(cli({"simulate", "--scenario", "/nonexistent.ini"}).status != 0);
  CHECK(cli({"explode", "--scenario", "x"}).status != 0);
  CHECK(cli({"simulate"}).status != 0);
  const auto path = write_temp("bad.ini", "[config]\nperiod = 4\n");
  const auto r = cli({"simulate", "--scenario", path});
  CHECK(r.status != 0);
  CHECK(r.err.find("error:") != std::string::npos);
  CHECK(cli({"sweep", "--scenario", write_temp("uniform_nosweep.ini", kUniform)}).status != 0);
}

TEST_CASE("unavailable oracle in a sweep is noted, not an error") {
  std::string text = kUniform;
  text.replace(text.find("offsets = 0,1,2,3"), 17, "tos = 17");
  text.replace(text.find("period = 10"), 11, "period = 20");
  text.replace(text.find("epsilon = 0.1"), 13, "epsilon = 0.1\ndecode = rv_aware");
  const auto path = write_temp("rv17.ini", text);
  const auto r = cli({"sweep", "--scenario", path, "--sweep", "channel.epsilon=0.1,0.2", "--format", "csv",
                      "--packets", "500"});
  CHECK(r.status == 0);
  CHECK(r.err.find("oracle unavailable") != std::string::npos);
  CHECK(lines(r.out).size() == 3);
  CHECK(cli({"analyze", "--scenario", path}).status != 0);
}
