// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace scanforge {

enum class ErrorCode {
  // netlist front end
  NetlistSyntax,
  DuplicateInstance,
  MultiplyDrivenNet,
  UndeclaredNet,
  CombinationalCycle,
  // pattern files
  PatternWidthMismatch,
  PatternIllegalCharacter,
  // cell library
  CellConfigSyntax,
  NonpositiveFactor,
  MissingParams,
  // switch-level networks
  NetworkSyntax,
  DanglingNode,
  MissingSupply,
  Oscillation,
  NotEquivalent,
  // scan insertion / chain verification
  PlanMismatch,
  NameCollision,
  AlreadyInserted,
  NoFlipFlops,
  BrokenChain,
  MultipleChains,
  MixedVariants,
  // simulation / analysis
  StimulusMismatch,
  MismatchedConfig,
  NonpositiveInput,
  WidthMismatch,
  Io,
};

/// Module-qualified, machine-readable name, e.g. "netlist.multiply_driven_net".
std::string_view code_name(ErrorCode code);

struct SourceLocation {
  std::size_t line = 0;
  std::size_t column = 0;
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message,
        std::optional<SourceLocation> where = std::nullopt,
        std::vector<std::string> subjects = {});

  ErrorCode code() const noexcept { return code_; }
  const std::optional<SourceLocation>& where() const noexcept { return where_; }
  /// Names the error is about (nets in a cycle, oscillating nodes, ...).
  const std::vector<std::string>& subjects() const noexcept { return subjects_; }

 private:
  ErrorCode code_;
  std::optional<SourceLocation> where_;
  std::vector<std::string> subjects_;
};

}  // namespace scanforge
