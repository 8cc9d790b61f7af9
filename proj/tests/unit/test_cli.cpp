#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "cli.hpp"
#include "tdesign/errors.hpp"
#include "tdesign/gate_format.hpp"

namespace tdesign::cli {
namespace {

namespace fs = std::filesystem;

class TempDir {
 public:
  TempDir() : path_(fs::temp_directory_path() / ("tdesign_cli_" + std::to_string(::getpid()) + "_" +
                                                 std::to_string(counter_++))) {
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  std::string file(const std::string& name) const { return (path_ / name).string(); }

 private:
  static inline int counter_ = 0;
  fs::path path_;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

int run(std::vector<std::string> args) {
  args.insert(args.begin(), "tdesign");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  return main_entry(static_cast<int>(argv.size()), argv.data());
}

RunConfig config_for(const std::string& command, std::vector<int> n, std::vector<int> t) {
  RunConfig c;
  c.command = command;
  c.n = std::move(n);
  c.t = std::move(t);
  c.exact = true;
  return c;
}

std::size_t column(const Table& table, const std::string& name) {
  for (std::size_t k = 0; k < table.columns.size(); ++k) {
    if (table.columns[k] == name) return k;
  }
  throw std::out_of_range(name);
}

TEST(ParseIntList, AcceptsValuesRangesAndMixtures) {
  EXPECT_EQ(parse_int_list("3"), std::vector<int>{3});
  EXPECT_EQ(parse_int_list("2..5"), (std::vector<int>{2, 3, 4, 5}));
  EXPECT_EQ(parse_int_list("3,5,7..9"), (std::vector<int>{3, 5, 7, 8, 9}));
  for (const char* bad : {"", "a", "3..", "5..2", "1,,2", "2.5"}) {
    EXPECT_THROW(parse_int_list(bad), InvalidArgument) << bad;
  }
}

TEST(RunConfig, JsonRoundTrip) {
  auto c = config_for("decay", {3, 4}, {2});
  c.r = 2;
  c.samples = 17;
  c.max_T = 4;
  c.seed = 123456789012345ULL;
  c.options["mode"] = "sampled";
  const auto back = RunConfig::from_json(c.to_json());
  EXPECT_EQ(back.to_json(), c.to_json());
  EXPECT_EQ(back.r, 2);
}

TEST(Commands, Eta) {
  const auto table = cmd_eta(config_for("eta", {1, 4, 10}, {1, 2}));
  ASSERT_EQ(table.rows.size(), 6u);
  EXPECT_EQ(table.rows[0][column(table, "eta")], "0");
  EXPECT_EQ(table.rows[1][column(table, "eta")], "1/3");
  EXPECT_EQ(table.rows[3][column(table, "eta")], "15/136");
  const double ratio = table.rows[5][column(table, "ratio")].get<double>();
  EXPECT_NEAR(ratio, 1.0, 0.01);
}

TEST(Commands, DesignCheckReproducesThresholds) {
  auto c = config_for("design-check", {4}, {2, 3, 4, 5, 6, 7, 8, 15});
  c.options["mode"] = "exhaustive";
  const auto table = cmd_design_check(c);
  const std::vector<int> expected = {2, 2, 3, 3, 3, 3, 4, 4};
  ASSERT_EQ(table.rows.size(), expected.size());
  for (std::size_t k = 0; k < expected.size(); ++k) {
    EXPECT_EQ(table.rows[k][column(table, "minimal_r")], expected[k]);
    EXPECT_EQ(table.rows[k][column(table, "agrees")], true);
  }
  const auto three = cmd_design_check(config_for("design-check", {3}, {8}));
  EXPECT_EQ(three.rows[0][column(three, "minimal_r")], 3);
}

TEST(Commands, DesignCheckRejectsUnknownMode) {
  auto c = config_for("design-check", {3}, {2});
  c.options["mode"] = "guess";
  EXPECT_THROW(cmd_design_check(c), InvalidArgument);
}

TEST(Commands, MixingSummary) {
  const auto table = cmd_mixing(config_for("mixing", {3}, {2}));
  ASSERT_EQ(table.summary.size(), 1u);
  const auto& s = table.summary[0];
  EXPECT_EQ(s["p_star"], "8/9");
  EXPECT_EQ(s["closed_form_p_star"], "8/9");
  EXPECT_EQ(s["d_at_one"], "7/36");
  EXPECT_EQ(s["d_at_p_star"], "0");
}

TEST(Commands, GateCountUnitCost) {
  auto c = config_for("gatecount", {5}, {3});
  c.options["cost"] = "unit";
  const auto table = cmd_gatecount(c);
  ASSERT_EQ(table.rows.size(), 1u);
  EXPECT_EQ(table.rows[0][column(table, "r")], 2);
  EXPECT_EQ(table.rows[0][column(table, "supports")], "10");
  EXPECT_EQ(table.rows[0][column(table, "per_size_counts")], "1:20;2:10");
  EXPECT_EQ(table.rows[0][column(table, "total_s_le_r")], "30");
  EXPECT_EQ(table.rows[0][column(table, "total_s_lt_r")], "20");
}

TEST(Commands, GateCountReportsSlopes) {
  auto c = config_for("gatecount", {16, 32, 64}, {2});
  const auto table = cmd_gatecount(c);
  ASSERT_EQ(table.summary.size(), 1u);
  EXPECT_EQ(table.summary[0]["expected_exponent"], 2);
  EXPECT_GT(table.summary[0]["loglog_slope_s_le_r"].get<double>(), 1.9);
}

TEST(Commands, CircuitSampleEmitsParsableGates) {
  auto c = config_for("circuit-sample", {4}, {3});
  c.options["kind"] = "discrete";
  c.seed = 5;
  const auto table = cmd_circuit_sample(c);
  ASSERT_TRUE(table.text.has_value());
  const auto gates = parse_gate_list(*table.text, 4);
  EXPECT_EQ(gates.size(), 18u);
  c.options["kind"] = "continuous";
  const auto continuous = parse_gate_list(*cmd_circuit_sample(c).text, 4);
  EXPECT_EQ(continuous.size(), 6u);
  EXPECT_TRUE(std::holds_alternative<DiagGate>(continuous[0]));
}

TEST(Commands, RejectsUnknownCommandAndFormat) {
  EXPECT_THROW(run_command(config_for("plot", {3}, {2})), InvalidArgument);
  auto c = config_for("eta", {3}, {2});
  c.format = "xml";
  EXPECT_THROW(run_command(c), InvalidArgument);
}

TEST(Output, CsvHeaderAndRows) {
  const auto c = config_for("eta", {1}, {2});
  std::stringstream out;
  write_output(out, RunMetadata{c, std::nullopt, std::nullopt}, cmd_eta(c));
  const auto text = out.str();
  EXPECT_EQ(text.rfind("# tool: tdesign 1.0.0\n# config: {", 0), 0u);
  EXPECT_NE(text.find("# seed: 0\n"), std::string::npos);
  EXPECT_EQ(text.find("started_at"), std::string::npos);
  EXPECT_NE(text.find("n,t,eta,eta_float,eta_asymptotic,eta_asymptotic_float,ratio\n1,2,1/3,"), std::string::npos);
}

TEST(Output, WallClockFieldsOutsideExactMode) {
  const auto c = config_for("eta", {1}, {2});
  std::stringstream out;
  write_output(out, RunMetadata{c, std::string("2026-01-01T00:00:00Z"), 0.5}, cmd_eta(c));
  EXPECT_NE(out.str().find("# started_at: 2026-01-01T00:00:00Z\n# elapsed_seconds: 0.5\n"), std::string::npos);
}

TEST(Output, ConfigRecoveredFromCsvAndJson) {
  auto c = config_for("mixing", {3, 4}, {2, 3});
  c.options["grid"] = 7;
  for (const char* format : {"csv", "json"}) {
    c.format = format;
    std::stringstream out;
    write_output(out, RunMetadata{c, std::nullopt, std::nullopt}, run_command(c));
    EXPECT_EQ(read_config_from_output(out.str()).to_json(), c.to_json()) << format;
  }
  EXPECT_THROW(read_config_from_output("n,t\n1,2\n"), InvalidArgument);
}

TEST(MainEntry, ExactOutputsReplayByteIdentically) {
  TempDir dir;
  const std::vector<std::vector<std::string>> runs = {
      {"eta", "--n", "1..6", "--t", "2,3"},
      {"design-check", "--n", "3", "--t", "2..5"},
      {"mixing", "--n", "3", "--t", "2", "--format", "json"},
      {"gatecount", "--n", "4..8", "--t", "4"},
      {"circuit-sample", "--n", "4", "--t", "3", "--seed", "11"},
      {"decay", "--n", "3", "--samples", "40", "--max-t", "2", "--seed", "5"},
  };
  int k = 0;
  for (auto args : runs) {
    const auto first = dir.file("first" + std::to_string(k));
    const auto second = dir.file("second" + std::to_string(k));
    const auto replayed = dir.file("replayed" + std::to_string(k++));
    args.insert(args.end(), {"--exact", "--out", first});
    ASSERT_EQ(run(args), 0) << args[0];
    args.back() = second;
    ASSERT_EQ(run(args), 0);
    ASSERT_EQ(run({"replay", "--from", first, "--out", replayed}), 0);
    const auto a = slurp(first);
    EXPECT_FALSE(a.empty());
    EXPECT_EQ(a, slurp(second)) << args[0];
    EXPECT_EQ(a, slurp(replayed)) << args[0];
  }
}

TEST(MainEntry, ExitCodes) {
  TempDir dir;
  const auto out = dir.file("out.csv");
  EXPECT_EQ(run({"eta", "--n", "0", "--out", out}), 2);
  EXPECT_EQ(run({"eta", "--n", "x", "--out", out}), 2);
  EXPECT_EQ(run({"eta", "--format", "xml", "--out", out}), 2);
  EXPECT_EQ(run({"eta", "--bogus", "--out", out}), 2);
  EXPECT_EQ(run({"unknown"}), 2);
  EXPECT_EQ(run({"decay", "--n", "3", "--t", "3", "--mode", "design-average", "--out", out}), 2);
  EXPECT_EQ(run({"design-check", "--n", "6", "--t", "12", "--mode", "blind", "--budget", "1000", "--out", out}), 3);
  EXPECT_EQ(run({"replay", "--from", dir.file("missing.csv")}), 2);
  EXPECT_EQ(run({"eta", "--n", "2", "--out", out}), 0);
}

}  // namespace
}  // namespace tdesign::cli
