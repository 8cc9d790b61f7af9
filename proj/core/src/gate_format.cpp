#include "tdesign/gate_format.hpp"

#include <charconv>
#include <cstdio>
#include <cstdlib>

#include "tdesign/errors.hpp"

namespace tdesign {
namespace {

std::string hex_float(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%a", value);
  return buffer;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = text.find(sep, start);
    out.push_back(text.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::uint64_t parse_unsigned(std::string_view text, std::string_view what) {
  std::uint64_t value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  require(ec == std::errc() && ptr == text.data() + text.size() && !text.empty(),
          "malformed " + std::string(what) + " '" + std::string(text) + "'");
  return value;
}

double parse_hex_float(std::string_view text) {
  const std::string owned(text);
  char* end = nullptr;
  const double value = std::strtod(owned.c_str(), &end);
  require(!owned.empty() && end == owned.c_str() + owned.size(), "malformed phase '" + owned + "'");
  return value;
}

IndexSubset parse_targets(std::string_view text, int n) {
  std::vector<int> indices;
  for (auto part : split(text, ',')) indices.push_back(static_cast<int>(parse_unsigned(part, "target")));
  return IndexSubset(std::move(indices), n);
}

/// Splits "key=value" fields and checks that the keys come in the given order.
std::vector<std::string_view> fields(std::string_view line, std::initializer_list<std::string_view> keys) {
  std::vector<std::string_view> tokens;
  std::size_t pos = 0;
  while (pos < line.size()) {
    while (pos < line.size() && line[pos] == ' ') ++pos;
    if (pos >= line.size()) break;
    auto end = line.find(' ', pos);
    if (end == std::string_view::npos) end = line.size();
    tokens.push_back(line.substr(pos, end - pos));
    pos = end;
  }
  require(tokens.size() == keys.size() + 1, "wrong number of fields in gate line '" + std::string(line) + "'");
  std::vector<std::string_view> values;
  std::size_t k = 1;
  for (auto key : keys) {
    const auto token = tokens[k++];
    require(token.size() > key.size() && token.substr(0, key.size()) == key && token[key.size()] == '=',
            "expected field '" + std::string(key) + "=' in gate line '" + std::string(line) + "'");
    values.push_back(token.substr(key.size() + 1));
  }
  return values;
}

}  // namespace

std::string format_gate(const CPhaseGate& gate) {
  return "CP s=" + std::to_string(gate.targets.size()) + " targets=" + gate.targets.to_string() +
         " phase=" + std::to_string(gate.k) + "/" + std::to_string(gate.m);
}

std::string format_gate(const DiagGate& gate) {
  std::string phases;
  for (std::size_t k = 0; k < gate.phases.size(); ++k) {
    if (k) phases += ',';
    phases += hex_float(gate.phases[k]);
  }
  return "DIAG r=" + std::to_string(gate.targets.size()) + " targets=" + gate.targets.to_string() +
         " phases=" + phases;
}

std::string format_gate_list(const std::vector<GateLine>& gates) {
  std::string out;
  for (const auto& gate : gates) {
    out += std::visit([](const auto& g) { return format_gate(g); }, gate);
    out += '\n';
  }
  return out;
}

GateLine parse_gate(std::string_view line, int n) {
  if (line.starts_with("CP ")) {
    const auto v = fields(line, {"s", "targets", "phase"});
    auto targets = parse_targets(v[1], n);
    require(static_cast<std::uint64_t>(targets.size()) == parse_unsigned(v[0], "size"),
            "size field disagrees with the target list");
    const auto slash = v[2].find('/');
    require(slash != std::string_view::npos, "phase must be written k/m");
    const auto k = parse_unsigned(v[2].substr(0, slash), "phase numerator");
    const auto m = parse_unsigned(v[2].substr(slash + 1), "phase denominator");
    require(m >= 1 && k < m && m <= UINT32_MAX, "phase k/m needs 0 <= k < m");
    return CPhaseGate{std::move(targets), static_cast<std::uint32_t>(k), static_cast<std::uint32_t>(m)};
  }
  if (line.starts_with("DIAG ")) {
    const auto v = fields(line, {"r", "targets", "phases"});
    auto targets = parse_targets(v[1], n);
    require(static_cast<std::uint64_t>(targets.size()) == parse_unsigned(v[0], "support"),
            "support field disagrees with the target list");
    std::vector<double> phases;
    for (auto part : split(v[2], ',')) phases.push_back(parse_hex_float(part));
    require(phases.size() == (std::size_t{1} << targets.size()), "DIAG gate needs 2^r phases");
    return DiagGate{std::move(targets), std::move(phases)};
  }
  throw InvalidArgument("unknown gate line '" + std::string(line) + "'");
}

std::vector<GateLine> parse_gate_list(std::string_view text, int n) {
  std::vector<GateLine> out;
  for (auto line : split(text, '\n')) {
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty() || line.front() == '#') continue;
    out.push_back(parse_gate(line, n));
  }
  return out;
}

DiagonalUnitary diagonal_from_gate_lines(int n, const std::vector<GateLine>& gates) {
  std::vector<DiagGate> diag;
  std::vector<CPhaseGate> cphase;
  for (const auto& gate : gates) {
    if (const auto* g = std::get_if<DiagGate>(&gate)) diag.push_back(*g);
    else cphase.push_back(std::get<CPhaseGate>(gate));
  }
  // Diagonal gates commute, so the two kinds can be accumulated separately.
  return diagonal_from_gates(n, diag).compose(diagonal_from_gates(n, cphase));
}

}  // namespace tdesign
