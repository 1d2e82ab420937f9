// SPDX-License-Identifier: Apache-2.0
#include "scanforge/error.hpp"

namespace scanforge {

std::string_view code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::NetlistSyntax: return "netlist.syntax";
    case ErrorCode::DuplicateInstance: return "netlist.duplicate_instance";
    case ErrorCode::MultiplyDrivenNet: return "netlist.multiply_driven_net";
    case ErrorCode::UndeclaredNet: return "netlist.undeclared_net";
    case ErrorCode::CombinationalCycle: return "netlist.combinational_cycle";
    case ErrorCode::PatternWidthMismatch: return "patterns.width_mismatch";
    case ErrorCode::PatternIllegalCharacter: return "patterns.illegal_character";
    case ErrorCode::CellConfigSyntax: return "cells.syntax";
    case ErrorCode::NonpositiveFactor: return "cells.nonpositive_factor";
    case ErrorCode::MissingParams: return "cells.missing_params";
    case ErrorCode::NetworkSyntax: return "switch.syntax";
    case ErrorCode::DanglingNode: return "switch.dangling_node";
    case ErrorCode::MissingSupply: return "switch.missing_supply";
    case ErrorCode::Oscillation: return "switch.oscillation";
    case ErrorCode::NotEquivalent: return "switch.not_equivalent";
    case ErrorCode::PlanMismatch: return "scan.plan_mismatch";
    case ErrorCode::NameCollision: return "scan.name_collision";
    case ErrorCode::AlreadyInserted: return "scan.already_inserted";
    case ErrorCode::NoFlipFlops: return "scan.no_flip_flops";
    case ErrorCode::BrokenChain: return "scan.broken_chain";
    case ErrorCode::MultipleChains: return "scan.multiple_chains";
    case ErrorCode::MixedVariants: return "scan.mixed_variants";
    case ErrorCode::StimulusMismatch: return "sim.stimulus_mismatch";
    case ErrorCode::MismatchedConfig: return "sta.mismatched_config";
    case ErrorCode::NonpositiveInput: return "power.nonpositive_input";
    case ErrorCode::WidthMismatch: return "power.width_mismatch";
    case ErrorCode::Io: return "io.error";
  }
  return "unknown";
}

Error::Error(ErrorCode code, const std::string& message,
             std::optional<SourceLocation> where,
             std::vector<std::string> subjects)
    : std::runtime_error(where ? message + " (line " + std::to_string(where->line) +
                                     ", column " + std::to_string(where->column) + ")"
                               : message),
      code_(code),
      where_(where),
      subjects_(std::move(subjects)) {}

}  // namespace scanforge
