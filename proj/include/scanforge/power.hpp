// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "scanforge/cell_library.hpp"
#include "scanforge/protocol_sim.hpp"

namespace scanforge {

struct PowerOptions {
  /// Extra energy per APPROX contention event. No characterized value exists,
  /// so it stays 0 unless a caller sets one.
  double contention_penalty_fj = 0;
};

struct FFPower {
  std::string id;
  std::size_t test_cycles = 0;
  std::size_t functional_cycles = 0;
  double energy_fj = 0;
  std::uint64_t contention = 0;
};

struct PowerReport {
  std::string design;
  FFVariant variant = FFVariant::Mux;
  Stage stage = Stage::PostLayout;
  /// Test when any cycle ran with SE=1, otherwise functional.
  Mode mode = Mode::Functional;
  std::size_t cycles = 0;
  double t_clk_ns = 0;
  double ff_internal_energy_fj = 0;
  double combinational_energy_fj = 0;
  double total_avg_power_uw = 0;  // (ff + comb) / (cycles * t_clk)
  std::vector<FFPower> per_ff;
  std::uint64_t contention_cycles = 0;
};

/// FF-internal energy bills every flip-flop, every cycle, at avg_power / f_ref of
/// the cycle's mode (SE=1 -> test, otherwise functional). Combinational energy
/// charges each gate-driven net's toggles at its driver's per-toggle energy.
PowerReport estimate_power(const ProtocolTrace& trace, FFVariant variant, Stage stage,
                           const CellLibrary& lib, double t_clk_ns,
                           const PowerOptions& options = {});

/// Same, with explicit flip-flop parameters (e.g. after scale_params).
PowerReport estimate_power(const ProtocolTrace& trace, const FFVariantParams& ff,
                           const GateParams& gates, double t_clk_ns,
                           const PowerOptions& options = {});

/// Percent saving of `candidate` relative to `reference`.
double power_gain(double reference_uw, double candidate_uw);

/// Position-weighted adjacent-bit transitions of a scan vector:
/// sum over i of (L - i) * [b_i != b_{i+1}], i = 1..L-1.
std::uint64_t weighted_transition_count(std::string_view vector, std::size_t chain_length);

}  // namespace scanforge
