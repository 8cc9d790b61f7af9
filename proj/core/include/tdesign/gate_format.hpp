#pragma once

// Line-oriented gate lists:
//   CP s=<size> targets=<i,...> phase=<k>/<m>
//   DIAG r=<r> targets=<i,...> phases=<hex float>,<hex float>,...
// Lines starting with '#' and blank lines are ignored by the parser.

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "tdesign/circuits.hpp"

namespace tdesign {

using GateLine = std::variant<CPhaseGate, DiagGate>;

std::string format_gate(const CPhaseGate& gate);
std::string format_gate(const DiagGate& gate);

/// One gate per line, each terminated by '\n'.
std::string format_gate_list(const std::vector<GateLine>& gates);

/// Parses a single gate line for an n-qubit register.
GateLine parse_gate(std::string_view line, int n);

std::vector<GateLine> parse_gate_list(std::string_view text, int n);

DiagonalUnitary diagonal_from_gate_lines(int n, const std::vector<GateLine>& gates);

}  // namespace tdesign
