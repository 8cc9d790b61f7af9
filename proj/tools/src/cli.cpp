#include "cli.hpp"

#include <bit>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "tdesign/circuits.hpp"
#include "tdesign/decay.hpp"
#include "tdesign/errors.hpp"
#include "tdesign/exact_analysis.hpp"
#include "tdesign/gate_format.hpp"
#include "tdesign/moments.hpp"
#include "tdesign/rational.hpp"
#include "tdesign/rng.hpp"

namespace tdesign::cli {

using nlohmann::json;

namespace {

json rational_cell(const Rational& q) { return to_string(q); }
json float_cell(const Rational& q) { return to_double(q); }

std::string option_string(const RunConfig& config, const char* key, const std::string& fallback) {
  return config.options.contains(key) ? config.options.at(key).get<std::string>() : fallback;
}

std::uint64_t option_u64(const RunConfig& config, const char* key, std::uint64_t fallback) {
  return config.options.contains(key) ? config.options.at(key).get<std::uint64_t>() : fallback;
}

int single(const std::vector<int>& values, const char* flag) {
  require(values.size() == 1, std::string("this command takes a single value for ") + flag);
  return values.front();
}

DesignSearch parse_mode(const std::string& mode) {
  if (mode == "exhaustive") return DesignSearch::kExhaustive;
  if (mode == "blind") return DesignSearch::kBlindExhaustive;
  if (mode == "threshold") return DesignSearch::kThreshold;
  throw InvalidArgument("unknown design-check mode '" + mode + "' (exhaustive|blind|threshold)");
}

std::string csv_cell(const json& v) {
  if (v.is_null()) return "";
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_number_integer()) return v.dump();
  if (v.is_number_float()) return format_double(v.get<double>());
  std::string s = v.is_string() ? v.get<std::string>() : v.dump();
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char c : s) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  return quoted + "\"";
}

/// Non-finite floats have no JSON spelling; they become null.
json json_cell(const json& v) {
  if (v.is_number_float() && !std::isfinite(v.get<double>())) return nullptr;
  return v;
}

std::string utc_now() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buffer[32];
  std::strftime(buffer, sizeof buffer, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buffer;
}

double loglog_slope(const std::vector<int>& ns, const std::vector<BigInt>& totals) {
  std::vector<double> x, y;
  for (std::size_t k = 0; k < ns.size(); ++k) {
    if (totals[k] <= 0) return std::nan("");
    x.push_back(std::log(static_cast<double>(ns[k])));
    y.push_back(std::log(to_double(totals[k])));
  }
  return fit_line(x, y).slope;
}

}  // namespace

json RunConfig::to_json() const {
  json j = {{"command", command}, {"n", n},           {"t", t},           {"samples", samples},
            {"max_t", max_T},     {"seed", seed},     {"format", format}, {"exact", exact},
            {"options", options}};
  j["r"] = r ? json(*r) : json(nullptr);
  return j;
}

RunConfig RunConfig::from_json(const json& j) {
  RunConfig c;
  c.command = j.at("command").get<std::string>();
  c.n = j.at("n").get<std::vector<int>>();
  c.t = j.at("t").get<std::vector<int>>();
  if (!j.at("r").is_null()) c.r = j.at("r").get<int>();
  c.samples = j.at("samples").get<std::size_t>();
  c.max_T = j.at("max_t").get<int>();
  c.seed = j.at("seed").get<std::uint64_t>();
  c.format = j.at("format").get<std::string>();
  c.exact = j.at("exact").get<bool>();
  c.options = j.value("options", json::object());
  return c;
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream stream(text);
  std::string part;
  auto to_int = [&](const std::string& s) {
    std::size_t used = 0;
    int value = 0;
    try {
      value = std::stoi(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    require(used == s.size() && !s.empty(), "malformed integer list '" + text + "'");
    return value;
  };
  while (std::getline(stream, part, ',')) {
    const auto dots = part.find("..");
    if (dots == std::string::npos) {
      out.push_back(to_int(part));
      continue;
    }
    const int lo = to_int(part.substr(0, dots));
    const int hi = to_int(part.substr(dots + 2));
    require(lo <= hi, "empty range '" + part + "'");
    for (int v = lo; v <= hi; ++v) out.push_back(v);
  }
  require(!out.empty(), "empty integer list");
  return out;
}

Table cmd_eta(const RunConfig& config) {
  Table table;
  table.columns = {"n", "t", "eta", "eta_float", "eta_asymptotic", "eta_asymptotic_float", "ratio"};
  for (int n : config.n) {
    for (int t : config.t) {
      const auto eta = eta_exact(n, t).value;
      const auto asym = eta_asymptotic(n, t);
      json ratio = nullptr;
      if (asym != 0) ratio = to_double(Rational(eta / asym));
      table.rows.push_back({n, t, rational_cell(eta), float_cell(eta), rational_cell(asym), float_cell(asym), ratio});
    }
  }
  return table;
}

Table cmd_design_check(const RunConfig& config) {
  const auto mode = parse_mode(option_string(config, "mode", "exhaustive"));
  const auto budget = option_u64(config, "budget", kDefaultClassBudget);
  Table table;
  table.columns = {"n", "t", "minimal_r", "threshold", "agrees", "witness_r", "witness_first", "witness_second"};
  for (int n : config.n) {
    for (int t : config.t) {
      int minimal = 0;
      std::optional<TuplePair> witness;
      for (int r = 1; r <= n; ++r) {
        auto verdict = is_exact_design(n, t, r, mode, budget);
        if (verdict.is_exact_design) {
          minimal = r;
          break;
        }
        witness = std::move(verdict.witness);
      }
      const int threshold = design_threshold(n, t);
      std::vector<json> row = {n, t, minimal, threshold, minimal == threshold};
      if (witness && minimal > 1) {
        row.push_back(minimal - 1);
        row.push_back(witness->first.to_string());
        row.push_back(witness->second.to_string());
      } else {
        row.insert(row.end(), {nullptr, nullptr, nullptr});
      }
      table.rows.push_back(std::move(row));
    }
  }
  return table;
}

Table cmd_decay(const RunConfig& config) {
  const int t = single(config.t, "--t");
  const auto mode_name = option_string(config, "mode", t == 2 ? "design-average" : "sampled");
  DecayMode mode;
  if (mode_name == "design-average") mode = DecayMode::kDesignAverage;
  else if (mode_name == "sampled") mode = DecayMode::kSampledStates;
  else throw InvalidArgument("unknown decay mode '" + mode_name + "' (design-average|sampled)");

  Table table;
  table.columns = {"n", "t", "T", "D", "stderr", "noise_floor", "in_fit", "eta_float"};
  for (int n : config.n) {
    DecayConfig dc;
    dc.n = n;
    dc.t = t;
    dc.max_T = config.max_T;
    dc.samples = config.samples;
    dc.seed = stream_seed(config.seed, static_cast<std::uint64_t>(n));
    dc.mode = mode;
    dc.batches = static_cast<int>(option_u64(config, "batches", 10));
    const auto result = decay_experiment(dc);
    const double eta = to_double(result.eta);
    for (const auto& p : result.points) {
      table.rows.push_back({n, t, p.T, p.distance, p.std_error, p.noise_floor, p.in_fit, eta});
    }
    const auto& first = result.points.front();
    table.summary.push_back({{"n", n},
                             {"t", t},
                             {"samples", result.samples},
                             {"eta", to_string(result.eta)},
                             {"eta_float", eta},
                             {"fit_valid", result.fit_valid},
                             {"fit_points", result.fit_points},
                             {"alpha", json_cell(result.alpha)},
                             {"intercept", json_cell(result.intercept)},
                             {"r_squared", json_cell(result.r_squared)},
                             {"d0_within_3sigma", std::abs(first.distance - eta) <= 3.0 * first.std_error + 1e-9}});
  }
  return table;
}

Table cmd_mixing(const RunConfig& config) {
  const auto grid = option_u64(config, "grid", 20);
  require(grid >= 1, "the p grid needs at least one step");
  Table table;
  table.columns = {"n", "t", "p", "p_float", "D", "D_float"};
  for (int n : config.n) {
    for (int t : config.t) {
      const auto curve = mixing_curve(n, t);
      for (std::uint64_t k = 0; k <= grid; ++k) {
        Rational p(BigInt(std::to_string(k)), BigInt(std::to_string(grid)));
        p.canonicalize();
        const auto value = curve.evaluate(p);
        table.rows.push_back({n, t, rational_cell(p), float_cell(p), rational_cell(value), float_cell(value)});
      }
      const Rational improvement = curve.d_at_one - curve.d_at_p_star;
      const auto scale = power(pow2(static_cast<unsigned long>(n)), static_cast<unsigned long>(t - 1));
      json summary = {{"n", n},
                      {"t", t},
                      {"p_star", to_string(curve.p_star)},
                      {"p_star_float", to_double(curve.p_star)},
                      {"d_at_p_star", to_string(curve.d_at_p_star)},
                      {"d_at_p_star_float", to_double(curve.d_at_p_star)},
                      {"d_at_one", to_string(curve.d_at_one)},
                      {"d_at_one_float", to_double(curve.d_at_one)},
                      {"improvement", to_string(improvement)},
                      {"scaled_improvement_float", to_double(Rational(improvement * Rational(scale)))}};
      summary["closed_form_p_star"] = t >= 2 ? json(to_string(closed_form_p_star(n, t))) : json(nullptr);
      table.summary.push_back(std::move(summary));
    }
  }
  return table;
}

Table cmd_gatecount(const RunConfig& config) {
  const auto cost_name = option_string(config, "cost", "quadratic");
  CostModel cost;
  if (cost_name == "quadratic") cost = CostModel::quadratic();
  else if (cost_name == "unit") cost = CostModel::unit();
  else throw InvalidArgument("unknown cost model '" + cost_name + "' (quadratic|unit)");

  Table table;
  table.columns = {"n", "t", "r", "supports", "per_size_counts", "cost_model", "total_s_le_r", "total_s_lt_r"};
  for (int t : config.t) {
    std::vector<BigInt> full, below;
    for (int n : config.n) {
      const auto count = gate_count(n, t, cost);
      std::string sizes;
      for (const auto& [s, c] : count.per_size_counts) {
        if (!sizes.empty()) sizes += ';';
        sizes += std::to_string(s) + ":" + to_string(c);
      }
      table.rows.push_back({n, t, count.r, to_string(count.supports), sizes, cost.name,
                            to_string(count.total_elementary), to_string(count.total_below_support)});
      full.push_back(count.total_elementary);
      below.push_back(count.total_below_support);
    }
    if (config.n.size() >= 2) {
      table.summary.push_back({{"t", t},
                               {"cost_model", cost.name},
                               {"expected_exponent", static_cast<int>(std::bit_width(static_cast<unsigned>(t)))},
                               {"loglog_slope_s_le_r", json_cell(loglog_slope(config.n, full))},
                               {"loglog_slope_s_lt_r", json_cell(loglog_slope(config.n, below))}});
    }
  }
  return table;
}

Table cmd_circuit_sample(const RunConfig& config) {
  const int n = single(config.n, "--n");
  const int t = single(config.t, "--t");
  const int r = config.r.value_or(design_threshold(n, t));
  const auto kind = option_string(config, "kind", "discrete");
  auto rng = make_stream(config.seed, 0);
  std::vector<GateLine> gates;
  if (kind == "discrete") {
    for (auto& g : sample_discrete_gates(n, t, r, rng)) gates.emplace_back(std::move(g));
  } else if (kind == "continuous") {
    for (auto& g : sample_phase_random_gates(make_circuit_spec(n, r), rng)) gates.emplace_back(std::move(g));
  } else {
    throw InvalidArgument("unknown circuit kind '" + kind + "' (discrete|continuous)");
  }
  Table table;
  table.text = format_gate_list(gates);
  return table;
}

Table run_command(const RunConfig& config) {
  require(config.format == "csv" || config.format == "json",
          "unknown output format '" + config.format + "' (csv|json)");
  if (config.command == "eta") return cmd_eta(config);
  if (config.command == "design-check") return cmd_design_check(config);
  if (config.command == "decay") return cmd_decay(config);
  if (config.command == "mixing") return cmd_mixing(config);
  if (config.command == "gatecount") return cmd_gatecount(config);
  if (config.command == "circuit-sample") return cmd_circuit_sample(config);
  throw InvalidArgument("unknown command '" + config.command + "'");
}

void write_output(std::ostream& out, const RunMetadata& meta, const Table& table) {
  if (meta.config.format == "json") {
    json doc;
    doc["metadata"] = {{"tool", kToolName},
                       {"version", kToolVersion},
                       {"config", meta.config.to_json()},
                       {"seed", meta.config.seed}};
    if (meta.started_at) doc["metadata"]["started_at"] = *meta.started_at;
    if (meta.elapsed_seconds) doc["metadata"]["elapsed_seconds"] = *meta.elapsed_seconds;
    if (table.text) {
      json lines = json::array();
      std::stringstream body(*table.text);
      std::string line;
      while (std::getline(body, line)) lines.push_back(line);
      doc["gates"] = std::move(lines);
    } else {
      doc["columns"] = table.columns;
      json rows = json::array();
      for (const auto& row : table.rows) {
        json object = json::object();
        for (std::size_t k = 0; k < table.columns.size(); ++k) object[table.columns[k]] = json_cell(row[k]);
        rows.push_back(std::move(object));
      }
      doc["rows"] = std::move(rows);
      doc["summary"] = table.summary;
    }
    out << doc.dump(2) << '\n';
    return;
  }

  out << "# tool: " << kToolName << ' ' << kToolVersion << '\n';
  out << "# config: " << meta.config.to_json().dump() << '\n';
  out << "# seed: " << meta.config.seed << '\n';
  if (meta.started_at) out << "# started_at: " << *meta.started_at << '\n';
  if (meta.elapsed_seconds) out << "# elapsed_seconds: " << format_double(*meta.elapsed_seconds) << '\n';
  if (table.text) {
    out << *table.text;
    return;
  }
  for (std::size_t k = 0; k < table.columns.size(); ++k) out << (k ? "," : "") << table.columns[k];
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t k = 0; k < row.size(); ++k) out << (k ? "," : "") << csv_cell(row[k]);
    out << '\n';
  }
  for (const auto& s : table.summary) out << "# summary: " << s.dump() << '\n';
}

RunConfig read_config_from_output(const std::string& contents) {
  const auto first = contents.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && contents[first] == '{') {
    return RunConfig::from_json(json::parse(contents).at("metadata").at("config"));
  }
  std::stringstream stream(contents);
  std::string line;
  const std::string prefix = "# config: ";
  while (std::getline(stream, line)) {
    if (line.rfind(prefix, 0) == 0) return RunConfig::from_json(json::parse(line.substr(prefix.size())));
  }
  throw InvalidArgument("no '# config:' header found");
}

namespace {

struct Defaults {
  const char* n;
  const char* t;
};

Defaults defaults_for(const std::string& command) {
  if (command == "eta") return {"1..10", "2"};
  if (command == "design-check") return {"4", "2..15"};
  if (command == "decay") return {"3..6", "2"};
  if (command == "mixing") return {"3", "2"};
  if (command == "gatecount") return {"5", "3"};
  return {"4", "3"};
}

struct RawFlags {
  std::string n, t, out, format = "csv", mode, cost, kind, from;
  std::optional<int> r;
  std::size_t samples = 1000;
  int max_T = 10;
  std::uint64_t seed = 0;
  std::uint64_t budget = kDefaultClassBudget;
  std::uint64_t grid = 20;
  int batches = 10;
  bool exact = false;
};

int execute(RunConfig config) {
  const auto start = std::chrono::steady_clock::now();
  RunMetadata meta{config, std::nullopt, std::nullopt};
  if (!config.exact) meta.started_at = utc_now();
  const auto table = run_command(config);
  if (!config.exact) {
    meta.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
  if (config.out.empty()) {
    write_output(std::cout, meta, table);
    return static_cast<int>(ExitCode::kOk);
  }
  std::ofstream file(config.out, std::ios::binary);
  require(static_cast<bool>(file), "cannot open output file '" + config.out + "'");
  write_output(file, meta, table);
  require(static_cast<bool>(file), "failed writing '" + config.out + "'");
  return static_cast<int>(ExitCode::kOk);
}

}  // namespace

int main_entry(int argc, char** argv) {
  CLI::App app{"Exact and sampled diagnostics for diagonal-circuit state designs"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kToolName) + " " + kToolVersion);
  RawFlags flags;

  const std::vector<std::pair<std::string, std::string>> commands = {
      {"eta", "exact distance between Haar and phase-random moments"},
      {"design-check", "smallest gate support giving an exact diagonal design"},
      {"decay", "distance to Haar under brickwork layers (Monte Carlo)"},
      {"mixing", "distance curve of the mixed protocol and its minimiser"},
      {"gatecount", "controlled-phase gate counts of the design circuit"},
      {"circuit-sample", "sample a design circuit as a gate list"}};

  for (const auto& [name, help] : commands) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("--n", flags.n, "qubit counts, e.g. 4 or 3..6 or 3,5");
    sub->add_option("--t", flags.t, "moment orders, same syntax as --n");
    sub->add_option("--r", flags.r, "gate support size")->check(CLI::PositiveNumber);
    sub->add_option("--samples", flags.samples, "Monte Carlo samples per point")->check(CLI::PositiveNumber);
    sub->add_option("--max-t", flags.max_T, "largest number of brickwork layers")->check(CLI::NonNegativeNumber);
    sub->add_option("--seed", flags.seed, "global seed");
    sub->add_option("--out", flags.out, "output path (default stdout)");
    sub->add_option("--format", flags.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    sub->add_flag("--exact", flags.exact, "deterministic output: omit wall-clock fields");
    if (name == "design-check") {
      sub->add_option("--mode", flags.mode, "exhaustive, blind or threshold");
      sub->add_option("--budget", flags.budget, "class enumeration budget");
    }
    if (name == "decay") {
      sub->add_option("--mode", flags.mode, "design-average or sampled");
      sub->add_option("--batches", flags.batches, "bootstrap batches (even)");
    }
    if (name == "mixing") sub->add_option("--grid", flags.grid, "number of p steps on [0, 1]");
    if (name == "gatecount") sub->add_option("--cost", flags.cost, "quadratic or unit");
    if (name == "circuit-sample") sub->add_option("--kind", flags.kind, "discrete or continuous");
  }
  auto* replay = app.add_subcommand("replay", "rerun the configuration recorded in an output file");
  replay->add_option("--from", flags.from, "previous output file")->required();
  replay->add_option("--out", flags.out, "output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : static_cast<int>(ExitCode::kInvalidConfig);
  }

  try {
    const auto* chosen = app.get_subcommands().front();
    RunConfig config;
    if (chosen->get_name() == "replay") {
      std::ifstream in(flags.from, std::ios::binary);
      require(static_cast<bool>(in), "cannot read '" + flags.from + "'");
      std::stringstream buffer;
      buffer << in.rdbuf();
      config = read_config_from_output(buffer.str());
      config.out = flags.out;
      return execute(config);
    }
    config.command = chosen->get_name();
    const auto defaults = defaults_for(config.command);
    config.n = parse_int_list(flags.n.empty() ? defaults.n : flags.n);
    config.t = parse_int_list(flags.t.empty() ? defaults.t : flags.t);
    config.r = flags.r;
    config.samples = flags.samples;
    config.max_T = flags.max_T;
    config.seed = flags.seed;
    config.out = flags.out;
    config.format = flags.format;
    config.exact = flags.exact;
    if (config.command == "design-check") {
      config.options["mode"] = flags.mode.empty() ? "exhaustive" : flags.mode;
      config.options["budget"] = flags.budget;
    } else if (config.command == "decay") {
      config.options["mode"] = flags.mode.empty() ? (config.t.front() == 2 ? "design-average" : "sampled") : flags.mode;
      config.options["batches"] = flags.batches;
    } else if (config.command == "mixing") {
      config.options["grid"] = flags.grid;
    } else if (config.command == "gatecount") {
      config.options["cost"] = flags.cost.empty() ? "quadratic" : flags.cost;
    } else if (config.command == "circuit-sample") {
      config.options["kind"] = flags.kind.empty() ? "discrete" : flags.kind;
    }
    return execute(config);
  } catch (const BudgetExceeded& e) {
    std::cerr << "error: " << e.what() << '\n';
    return static_cast<int>(ExitCode::kBudgetExceeded);
  } catch (const InvalidArgument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return static_cast<int>(ExitCode::kInvalidConfig);
  } catch (const json::exception& e) {
    std::cerr << "error: malformed configuration: " << e.what() << '\n';
    return static_cast<int>(ExitCode::kInvalidConfig);
  }
}

}  // namespace tdesign::cli
