// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "scanforge/cell_library.hpp"
#include "scanforge/netlist.hpp"

namespace scanforge {

struct TimingOptions {
  double input_arrival_ns = 0;   // added to paths launched at primary inputs
  double output_required_ns = 0; // external delay after primary outputs
};

struct TimingReport {
  std::string design;
  FFVariant variant = FFVariant::Mux;
  Stage stage = Stage::PostLayout;
  Mode mode = Mode::Functional;
  double t_comb_ns = 0;
  double t_su_ns = 0;
  double t_cq_ns = 0;
  double t_pd_ns = 0;        // characterization row's t_pd, as printed
  bool t_pd_flagged = false; // printed t_pd disagrees with t_su + t_cq
  double t_clk_min_ns = 0;   // t_cq + t_comb + t_su
  double f_max_hz = 0;       // 1 / t_clk_min
  std::vector<std::string> critical_path;  // launch point, gates, capture point
};

/// Longest combinational delay between timing start points (primary inputs,
/// flip-flop outputs) and end points (flip-flop data pins, primary outputs),
/// then the minimum clock period for the given flip-flop row. In test mode the
/// scan-in pins are end points as well, so a direct Q->SI hop is a zero-gate path.
TimingReport analyze_timing(const Netlist& n, FFVariant variant, Stage stage, Mode mode,
                            const CellLibrary& lib, const TimingOptions& options = {});

/// Delay advantage of `candidate` over `reference` in ns (positive: candidate
/// is faster). Both reports must describe the same design, stage and mode.
double time_gain(const TimingReport& reference, const TimingReport& candidate);

}  // namespace scanforge
