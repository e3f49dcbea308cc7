//@HEADER
// ************************************************************************
//
//                        d2mis v. 1.0
//
// Part of d2mis, under the Apache License v2.0 with LLVM Exceptions.
// SPDX-License-Identifier: Apache-2.0 WITH LLVM-exception
//
//@HEADER

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>

#include "commands.hpp"

using namespace d2mis;
using namespace d2mis::cli;
namespace fs = std::filesystem;

namespace {

const fs::path data_dir = D2MIS_TEST_DATA_DIR;
const fs::path golden_dir = D2MIS_GOLDEN_DIR;
const fs::path schema_path = D2MIS_SCHEMA_PATH;
const std::string cli_path = D2MIS_CLI_PATH;

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

// Subset of JSON Schema used by schema/report.schema.json.
bool matches_type(const json& v, const std::string& t) {
  if (t == "object") return v.is_object();
  if (t == "array") return v.is_array();
  if (t == "string") return v.is_string();
  if (t == "boolean") return v.is_boolean();
  if (t == "integer") return v.is_number_integer();
  if (t == "number") return v.is_number();
  return false;
}

void validate_schema(const json& v, const json& s, const std::string& path, std::vector<std::string>& errs) {
  if (s.contains("type") && !matches_type(v, s["type"])) errs.push_back(path + ": expected " + s["type"].get<std::string>());
  if (s.contains("const") && v != s["const"]) errs.push_back(path + ": const mismatch");
  if (s.contains("enum")) {
    bool hit = false;
    for (const auto& e : s["enum"]) hit |= e == v;
    if (!hit) errs.push_back(path + ": not in enum");
  }
  if (s.contains("minimum") && v.is_number() && v.get<double>() < s["minimum"].get<double>())
    errs.push_back(path + ": below minimum");
  if (v.is_number_float() && !std::isfinite(v.get<double>())) errs.push_back(path + ": not finite");
  if (s.contains("required") && v.is_object())
    for (const auto& r : s["required"])
      if (!v.contains(r.get<std::string>())) errs.push_back(path + ": missing " + r.get<std::string>());
  if (s.contains("properties") && v.is_object())
    for (const auto& [k, sub] : s["properties"].items())
      if (v.contains(k)) validate_schema(v[k], sub, path + "." + k, errs);
  if (s.contains("items") && v.is_array())
    for (std::size_t i = 0; i < v.size(); ++i) validate_schema(v[i], s["items"], path + "[" + std::to_string(i) + "]", errs);
  if (s.contains("allOf"))
    for (const auto& sub : s["allOf"]) validate_schema(v, sub, path, errs);
  if (s.contains("if")) {
    std::vector<std::string> probe;
    validate_schema(v, s["if"], path, probe);
    if (probe.empty() && s.contains("then")) validate_schema(v, s["then"], path, errs);
  }
}

std::vector<std::string> schema_errors(const json& report) {
  static const json schema = json::parse(slurp(schema_path));
  std::vector<std::string> errs;
  validate_schema(report, schema, "$", errs);
  return errs;
}

// Fields that depend on the machine rather than on the input.
json structural(json r) {
  r.erase("threads");
  for (auto& run : r["runs"])
    for (const char* k : {"wall_time_ms", "setup_time_ms", "apply_time_ms"}) run.erase(k);
  return r;
}

int run_cli(const std::string& args, const fs::path& out = {}) {
  std::string cmd = "\"" + cli_path + "\" " + args;
  if (!out.empty()) cmd += " > \"" + out.string() + "\"";
  cmd += " 2>/dev/null";
  const int rc = std::system(cmd.c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

std::string data(const char* name) { return (data_dir / name).string(); }

} // namespace

TEST(CliMis2, SingleVertex) {
  const CommandResult r = cmd_mis2({"grid2d:1,1"}, {});
  EXPECT_EQ(r.exit_code, exit_ok);
  const auto& run = r.report["runs"][0];
  EXPECT_EQ(run["set_size"], 1);
  EXPECT_EQ(run["iterations"], 1);
  EXPECT_EQ(run["verified"], true);
}

TEST(CliMis2, MissingFileIsHardError) {
  EXPECT_THROW(cmd_mis2({"missing.mtx"}, {}), invalid_input);
  EXPECT_EQ(run_cli("mis2 missing.mtx"), exit_hard_error);
}

TEST(CliMis2, ReportEmbedsHashConstantsAndSeed) {
  CommonOptions c;
  c.seed = 77;
  const CommandResult r = cmd_mis2({"grid2d:6,6", PriorityScheme::Fixed}, c);
  EXPECT_EQ(r.report["seed"], 77);
  EXPECT_EQ(r.report["hash"]["xorshift_shifts"], json({13, 7, 17}));
  EXPECT_EQ(r.report["hash"]["xorshift_star_multiplier"], "0x2545F4914F6CDD1D");
  EXPECT_EQ(r.report["runs"][0]["scheme"], "fixed");
  EXPECT_TRUE(schema_errors(r.report).empty());
}

TEST(CliCoarsen, EdgelessFixture) {
  const CommandResult r = cmd_coarsen({data("edgeless10.mtx"), "agg", ""}, {});
  EXPECT_EQ(r.exit_code, exit_ok);
  const auto& run = r.report["runs"][0];
  EXPECT_EQ(run["num_aggregates"], 10);
  EXPECT_EQ(run["min_aggregate_size"], 1);
  EXPECT_EQ(run["max_aggregate_size"], 1);
  EXPECT_EQ(run["unassigned"], 0);
}

TEST(CliCoarsen, PathFixtureLabels) {
  // The MIS-2 of a 5-path is {2}, or two roots at distance >= 3.
  std::ostringstream csv;
  const CommandResult r = cmd_coarsen({data("path5.mtx"), "basic", ""}, {}, &csv);
  EXPECT_EQ(r.exit_code, exit_ok);
  const std::string s = csv.str();
  EXPECT_TRUE(s == "vertex,aggregate\n0,0\n1,0\n2,1\n3,1\n4,1\n" || s == "vertex,aggregate\n0,0\n1,0\n2,0\n3,1\n4,1\n" ||
              s == "vertex,aggregate\n0,0\n1,0\n2,0\n3,0\n4,0\n")
      << s;
}

TEST(CliCoarsen, LabelsFileWritten) {
  const fs::path out = fs::temp_directory_path() / "d2mis_labels_test.csv";
  fs::remove(out);
  EXPECT_EQ(run_cli("coarsen " + data("path5.mtx") + " --algorithm basic --labels " + out.string(), "/dev/null"),
            exit_ok);
  std::ostringstream csv;
  cmd_coarsen({data("path5.mtx"), "basic", ""}, {}, &csv);
  EXPECT_EQ(slurp(out), csv.str());
  fs::remove(out);
}

TEST(CliCoarsen, Laplace30StructuralChecks) {
  const CommandResult r = cmd_coarsen({"laplace3d:30,30,30", "agg", ""}, {});
  EXPECT_EQ(r.exit_code, exit_ok);
  EXPECT_EQ(r.report["runs"][0]["unassigned"], 0);
  EXPECT_EQ(r.report["runs"][0]["connected"], true);
  EXPECT_TRUE(schema_errors(r.report).empty());
}

TEST(CliGsBench, SingularFixtureIsSoftFailure) {
  GsBenchOptions o;
  o.input = data("singular.mtx");
  o.scheme = "point";
  o.rhs = "ones";  // outside the range of the matrix
  const CommandResult r = cmd_gs_bench(o, {});
  EXPECT_EQ(r.exit_code, exit_soft_failure);
  EXPECT_EQ(r.report["runs"][0]["converged"], false);
  EXPECT_TRUE(schema_errors(r.report).empty());
  EXPECT_EQ(run_cli("gs-bench " + data("singular.mtx") + " --scheme point --rhs ones", "/dev/null"),
            exit_soft_failure);
}

TEST(CliGsBench, ConvergesOnSmallStencil) {
  GsBenchOptions o;
  o.input = "laplace3d:8,8,8";
  for (const char* solver : {"cg", "gmres"}) {
    o.solver = solver;
    const CommandResult r = cmd_gs_bench(o, {});
    EXPECT_EQ(r.exit_code, exit_ok) << solver;
    EXPECT_EQ(r.report["runs"][0]["converged"], true);
    EXPECT_TRUE(schema_errors(r.report).empty());
  }
}

TEST(CliGsBench, BadOptionsThrow) {
  GsBenchOptions o;
  o.input = "grid2d:3,3";
  o.scheme = "bogus";
  EXPECT_THROW(cmd_gs_bench(o, {}), invalid_input);
  EXPECT_EQ(run_cli("gs-bench grid2d:3,3 --solver bogus"), exit_hard_error);
}

TEST(CliHashStudy, Rows) {
  const CommandResult r = cmd_hash_study({{"grid2d:4,4", "grid2d:4,4", "nope.mtx"}}, {});
  EXPECT_EQ(r.exit_code, exit_soft_failure);
  std::istringstream in(r.csv);
  std::vector<std::string> lines;
  for (std::string l; std::getline(in, l);) lines.push_back(l);
  ASSERT_EQ(lines.size(), 4u);
  EXPECT_EQ(lines[0], "graph,num_vertices,num_edges,seed,hash_constants,fixed,xor,xorstar,error");
  EXPECT_EQ(lines[1], lines[2]);
  EXPECT_EQ(lines[1].rfind("\"grid2d:4,4\",16,24,0,", 0), 0u) << lines[1];
  EXPECT_EQ(lines[3].rfind("nope.mtx,,,0,", 0), 0u) << lines[3];
  EXPECT_THROW(cmd_hash_study({}, {}), invalid_input);
}

TEST(CliHashStudy, CsvQuoting) {
  EXPECT_EQ(csv_field("plain"), "plain");
  EXPECT_EQ(csv_field("a,b"), "\"a,b\"");
  EXPECT_EQ(csv_field("say \"x\", y"), "\"say \"\"x\"\", y\"");
}

TEST(CliHashStudy, HeaderMatchesSchema) {
  const json schema = json::parse(slurp(schema_path));
  std::string header;
  for (const auto& c : schema["$defs"]["hashStudyCsv"]["const"]) header += (header.empty() ? "" : ",") + c.get<std::string>();
  const CommandResult r = cmd_hash_study({{"grid2d:2,2"}}, {});
  EXPECT_EQ(r.csv.substr(0, r.csv.find('\n')), header);
}

TEST(CliSchema, ValidatorRejectsBrokenReports) {
  json r = cmd_mis2({"grid2d:3,3"}, {}).report;
  EXPECT_TRUE(schema_errors(r).empty());
  json bad = r;
  bad["runs"][0].erase("set_size");
  EXPECT_FALSE(schema_errors(bad).empty());
  bad = r;
  bad["schema_version"] = 2;
  EXPECT_FALSE(schema_errors(bad).empty());
  bad = r;
  bad["runs"][0]["iterations"] = -1;
  EXPECT_FALSE(schema_errors(bad).empty());
}

struct GoldenCase {
  const char* file;
  std::string args;
};

TEST(CliGolden, ReportsMatch) {
  const std::vector<GoldenCase> cases{
      {"mis2_grid2d_5_5.json", "mis2 grid2d:5,5 --seed 3"},
      {"mis2_path5_fixed.json", "mis2 " + data("path5.mtx") + " --scheme fixed"},
      {"coarsen_laplace_6.json", "coarsen laplace3d:6,6,6 --algorithm agg"},
      {"gs_bench_tridiag3.json", "gs-bench " + data("tridiag3.mtx") + " --scheme point --solver cg --rhs ones"},
  };
  const fs::path tmp = fs::temp_directory_path() / "d2mis_golden_out.json";
  for (const auto& c : cases) {
    ASSERT_EQ(run_cli(c.args + " --threads 2", tmp), exit_ok) << c.args;
    const json got = json::parse(slurp(tmp));
    EXPECT_TRUE(schema_errors(got).empty()) << c.file;
    json g = structural(got);
    if (g["runs"][0]["graph"].get<std::string>().ends_with(".mtx")) g["runs"][0]["graph"] = "fixture";
    json want = json::parse(slurp(golden_dir / c.file));
    want["index_bits"] = std::numeric_limits<index_t>::digits;  // goldens are recorded with 32-bit indices
    EXPECT_EQ(g, want) << c.file << "\n" << g.dump(2);
  }
  fs::remove(tmp);
}

TEST(CliGolden, HashStudyCsv) {
  const fs::path tmp = fs::temp_directory_path() / "d2mis_golden_out.csv";
  ASSERT_EQ(run_cli("hash-study grid2d:10,10 laplace3d:5,5,5", tmp), exit_ok);
  EXPECT_EQ(slurp(tmp), slurp(golden_dir / "hash_study.csv"));
  fs::remove(tmp);
}
