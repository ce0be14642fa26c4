#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "chow/cli.hpp"
#include "chow/error.hpp"

using namespace chow;
using namespace chow::cli;

namespace {

struct CliRun {
  int code;
  std::string out, err;
};

CliRun run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "chowcalc");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::size_t count_lines(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

}  // namespace

TEST(Tables, CellCounts) {
  EXPECT_EQ(table_requests(1).size(), 3u);
  EXPECT_EQ(table_requests(3).size(), 31u);
  EXPECT_EQ(table_requests(4).size(), 31u);
  EXPECT_THROW(table_requests(2), InvalidInput);
  EXPECT_EQ(builtin_manifest().size(), 65u);
}

TEST(Tables, WeightedLinesTable) {
  const auto records = run_table(1);
  ASSERT_EQ(records.size(), 3u);
  EXPECT_EQ(records[0].value, "2875");
  EXPECT_EQ(records[1].value, "7884");
  EXPECT_EQ(records[2].value, "29504");
  EXPECT_FALSE(records[0].incidence);
}

TEST(Tables, ThreadedOrderIsStable) {
  auto serial = run_table(3, 1);
  auto threaded = run_table(3, 4);
  for (auto* v : {&serial, &threaded}) {
    for (auto& r : *v) r.elapsed_ms = 0;
  }
  EXPECT_EQ(serial, threaded);
}

TEST(Formats, CsvShape) {
  const std::string csv = format_records(run_table(3), Format::Csv);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "family,k,a,b,c,value,curve_count");
  EXPECT_EQ(count_lines(csv), 32u);
  EXPECT_NE(csv.find("gw-lines,10,3,3,4,65733143224320,65733143224320"), std::string::npos);
  const std::string weighted = format_records(run_table(1), Format::Csv);
  EXPECT_NE(weighted.find("weighted-lines,4,,,,29504,29504"), std::string::npos);
}

TEST(Formats, JsonRoundTrip) {
  const auto records = run_table(4);
  const std::string json = format_records(records, Format::Json);
  EXPECT_EQ(parse_json_records(json), records);
  EXPECT_EQ(format_records(parse_json_records(json), Format::Json), json);
  EXPECT_NE(json.find("\"527556832251612742800359424\""), std::string::npos);
  EXPECT_THROW(parse_json_records("{\"not\": \"an array\"}"), InvalidInput);
}

TEST(Formats, TextHasHeaderAndRows) {
  const std::string text = format_records(run_table(1), Format::Text);
  EXPECT_EQ(count_lines(text), 4u);
  EXPECT_EQ(text.rfind("family", 0), 0u);
}

TEST(Manifest, JsonRoundTrip) {
  const std::string text = manifest_to_json(builtin_manifest());
  EXPECT_EQ(manifest_from_json(text), builtin_manifest());
}

TEST(Verify, LinesScopePasses) {
  std::ostringstream out;
  EXPECT_EQ(run_verify(Scope::Lines, builtin_manifest(), 1, out), kSuccess);
  EXPECT_NE(out.str().find("table 1: 3/3"), std::string::npos);
  EXPECT_NE(out.str().find("table 3: 31/31"), std::string::npos);
  EXPECT_EQ(out.str().find("table 4"), std::string::npos);
}

TEST(Verify, CorruptedManifestNamesTheCell) {
  auto manifest = builtin_manifest();
  for (auto& e : manifest) {
    if (e.table == 3 && e.k == 6 && e.incidence == Incidence{2, 2, 2}) e.value = "59021313";
  }
  std::ostringstream out;
  EXPECT_EQ(run_verify(Scope::Lines, manifest, 1, out), kMismatch);
  EXPECT_NE(out.str().find("MISMATCH table 3 k=6 (2,2,2): expected 59021313, computed 59021312"), std::string::npos)
      << out.str();
}

TEST(Verify, CorruptedManifestFileThroughCommandLine) {
  auto manifest = builtin_manifest();
  manifest[4].value = "1";  // table 3, k = 4
  const auto path = std::filesystem::temp_directory_path() / "chowcalc_corrupt_manifest.json";
  std::ofstream(path) << manifest_to_json(manifest);
  const CliRun r = run_cli({"verify", "--scope", "lines", "--manifest", path.string()});
  std::filesystem::remove(path);
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("MISMATCH table 3 k=4 (1,1,2)"), std::string::npos) << r.out;
}

TEST(Verify, EngineScopeRunsNoTables) {
  const CliRun r = run_cli({"verify", "--scope", "engine"});
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_EQ(r.out.find("table"), std::string::npos);
  EXPECT_NE(r.out.find("littlewood-richardson-oracle"), std::string::npos);
}

TEST(CommandLine, SingleQueries) {
  CliRun r = run_cli({"lines", "--dim", "5", "--incidence", "1,2"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("1707797"), std::string::npos);
  r = run_cli({"conics", "--dim", "8", "--incidence", "2,3", "--format", "csv"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("gw-conics,8,2,3,3,444475303469701680000,444475303469701680000"), std::string::npos);
  r = run_cli({"lines-weighted", "--weight", "4", "--format", "json"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(parse_json_records(r.out).at(0).value, "29504");
  r = run_cli({"table", "--id", "1", "--format", "csv"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(count_lines(r.out), 4u);
}

TEST(CommandLine, UsageErrorsExitTwo) {
  EXPECT_EQ(run_cli({}).code, 2);
  EXPECT_EQ(run_cli({"bogus"}).code, 2);
  EXPECT_EQ(run_cli({"table", "--id", "2"}).code, 2);
  EXPECT_EQ(run_cli({"lines", "--dim", "5"}).code, 2);
  EXPECT_EQ(run_cli({"lines", "--dim", "5", "--incidence", "3,2"}).code, 2);
  EXPECT_EQ(run_cli({"lines", "--dim", "12", "--incidence", "1,1"}).code, 2);
  EXPECT_EQ(run_cli({"lines-weighted", "--weight", "3"}).code, 2);
  EXPECT_EQ(run_cli({"verify", "--scope", "everything"}).code, 2);
  EXPECT_EQ(run_cli({"table", "--id", "1", "--format", "xml"}).code, 2);
  EXPECT_EQ(run_cli({"--threads", "0", "table", "--id", "1"}).code, 2);
  EXPECT_EQ(run_cli({"--help"}).code, 0);
}
