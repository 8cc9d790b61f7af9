#pragma once

// Subcommands of the tdesign command-line tool. Each command turns a RunConfig
// into a Table; writers render tables as CSV or JSON behind a metadata header.

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

namespace tdesign::cli {

inline constexpr const char* kToolName = "tdesign";
inline constexpr const char* kToolVersion = "1.0.0";

enum class ExitCode : int { kOk = 0, kInvalidConfig = 2, kBudgetExceeded = 3 };

struct RunConfig {
  std::string command;
  std::vector<int> n;
  std::vector<int> t;
  std::optional<int> r;
  std::size_t samples = 1000;
  int max_T = 10;
  std::uint64_t seed = 0;
  std::string out;
  std::string format = "csv";
  bool exact = false;
  /// Command-specific options (design-check mode, cost model, p grid, ...).
  nlohmann::json options = nlohmann::json::object();

  nlohmann::json to_json() const;
  static RunConfig from_json(const nlohmann::json& j);
};

/// "3", "2..15", "3,5,7..9".
std::vector<int> parse_int_list(const std::string& text);

struct Table {
  std::vector<std::string> columns;
  /// Each row holds one json value per column; null renders as an empty cell.
  std::vector<std::vector<nlohmann::json>> rows;
  std::vector<nlohmann::json> summary;
  /// Raw text body used instead of rows by circuit-sample.
  std::optional<std::string> text;
};

Table cmd_eta(const RunConfig& config);
Table cmd_design_check(const RunConfig& config);
Table cmd_decay(const RunConfig& config);
Table cmd_mixing(const RunConfig& config);
Table cmd_gatecount(const RunConfig& config);
Table cmd_circuit_sample(const RunConfig& config);

/// Dispatches on config.command.
Table run_command(const RunConfig& config);

struct RunMetadata {
  RunConfig config;
  /// ISO-8601 start time and elapsed seconds; omitted in exact mode.
  std::optional<std::string> started_at;
  std::optional<double> elapsed_seconds;
};

void write_output(std::ostream& out, const RunMetadata& meta, const Table& table);

/// Recovers the config from the header of a previously written output.
RunConfig read_config_from_output(const std::string& contents);

/// Runs a command from argv; returns the process exit code.
int main_entry(int argc, char** argv);

}  // namespace tdesign::cli
