// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "scanforge/ff_behavior.hpp"
#include "scanforge/switch_sim.hpp"

namespace scanforge {

/// Inputs held for one clock cycle of a single flip-flop.
struct FFCycleInputs {
  Logic di = Logic::Zero;
  Logic si = Logic::Zero;
  Logic se = Logic::Zero;
};
using FFSequence = std::vector<FFCycleInputs>;

/// Each cycle becomes a CLK=1 phase (inputs change with the rising edge)
/// followed by a CLK=0 phase.
std::vector<sw::Phase> to_phases(const FFSequence& seq);

/// Behavioral Q after every phase of to_phases(seq).
std::vector<Logic> behavioral_q(FFKind kind, const FFSequence& seq);

/// All 2^(3*length) binary sequences.
std::vector<FFSequence> exhaustive_sequences(std::size_t length);
std::vector<FFSequence> random_sequences(std::size_t count, std::size_t length, std::uint64_t seed);

struct EquivalenceReport {
  std::size_t sequences = 0;
  std::size_t phases_compared = 0;  // phases where the behavioral Q is known
  std::size_t mismatches = 0;       // sequences with at least one differing phase
  std::optional<std::string> first_mismatch;

  bool equivalent() const { return mismatches == 0; }
};

/// Runs every sequence on the transistor network and on the behavioral model
/// and compares Q wherever the behavioral value is not X.
EquivalenceReport check_equivalence(const sw::TransistorNetwork& net, FFKind kind,
                                    const std::vector<FFSequence>& sequences);

}  // namespace scanforge
