// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "scanforge/ff_behavior.hpp"
#include "scanforge/kernels.hpp"
#include "scanforge/netlist.hpp"
#include "scanforge/patterns.hpp"

namespace scanforge {

enum class ProtocolPhase : std::uint8_t { Functional, ShiftIn, Capture, ShiftOut };
std::string_view to_string(ProtocolPhase p);

/// Net values observed during one clock cycle, before its clock edges.
struct CycleRecord {
  std::size_t cycle = 0;
  ProtocolPhase phase = ProtocolPhase::Functional;
  bool launch = false;  // final shift-in cycle
  bool unload = false;  // the SO value of this cycle is part of a response
  Logic se = Logic::Zero;
  Logic si = Logic::X;
  Logic so = Logic::X;
  kernels::BitPlanes nets;

  /// SE=1 cycles are billed as test mode, everything else as functional.
  bool test_mode() const { return se == Logic::One; }
};

struct FFLedger {
  std::string id;
  std::uint64_t internal_toggles = 0;
  std::uint64_t contention = 0;
};

struct ToggleLedger {
  std::vector<std::uint64_t> net_toggles;  // indexed like ProtocolTrace::net_names
  std::vector<FFLedger> flip_flops;        // declaration order
  /// Net toggles between consecutive snapshots (cycle k to k+1, last one to final_nets).
  std::vector<std::uint64_t> step_toggles;

  std::uint64_t total_net_toggles() const;
};

struct PhaseTotals {
  std::size_t functional = 0;
  std::size_t shift_in = 0;  // includes the launch cycle
  std::size_t launch = 0;
  std::size_t capture = 0;
  std::size_t shift_out = 0;
};

struct ProtocolTrace {
  std::string design;
  std::vector<std::string> net_names;
  /// Gate type driving each net; empty for primary inputs and flip-flop outputs.
  std::vector<std::optional<GateType>> net_driver;
  std::vector<std::string> ff_ids;
  std::vector<CycleRecord> cycles;
  /// Net values after the last clock edge, so the ledger covers every edge.
  kernels::BitPlanes final_nets;
  ToggleLedger ledger;
  PhaseTotals totals;
  std::vector<std::string> warnings;

  std::size_t cycle_count() const { return cycles.size(); }
  std::size_t net_index(std::string_view name) const;  // throws UndeclaredNet
  Logic value(std::size_t cycle, std::string_view net) const;
};

struct SimOptions {
  /// An X still reaching a flip-flop input after this many cycles is reported.
  std::size_t x_warmup_cycles = 2;
  /// Primary-input level held during scan test cycles.
  Logic test_input_value = Logic::Zero;
  /// Overlap each shift-out with the next vector's shift-in.
  bool pipelined = false;
  /// Starting Q per flip-flop (declaration order); X when absent.
  std::vector<Logic> initial_q;
};

/// Per-cycle primary-input values. For a scan-inserted netlist the inputs are
/// the functional ones, i.e. every input except the chain's SI and SE.
using Stimulus = std::vector<std::vector<Logic>>;

/// Inputs driven by a functional stimulus, in netlist order.
std::vector<std::string> functional_inputs(const Netlist& n);

/// Normal operation with SE held at 0: zero-delay evaluation in topological
/// order, then a rising and a falling clock edge per cycle.
ProtocolTrace sim_functional(const Netlist& n, const Stimulus& stimulus, std::size_t cycles,
                             const SimOptions& options = {});

struct ScanTestResult {
  ProtocolTrace trace;
  std::vector<std::string> responses;  // one per vector, first bit out leftmost
  std::size_t mismatches = 0;          // vectors whose response differs from the expected one
};

/// Shift-in (last cycle launches), capture with SE=0, shift-out with SE=1.
ScanTestResult run_scan_test(const Netlist& n, const PatternSet& patterns,
                             const SimOptions& options = {});

/// Shift the given bits into the chain with SE=1 and no capture; the SO value
/// of every cycle is recorded in the trace.
ProtocolTrace sim_shift(const Netlist& n, std::string_view si_bits, const SimOptions& options = {});

/// Clock cycles for a complete scan test.
std::size_t cycle_budget(std::size_t chain_length, std::size_t num_vectors, bool pipelined);

/// Value-change dump, one time step (1 ns) per cycle.
void write_vcd(const ProtocolTrace& trace, std::ostream& os);

}  // namespace scanforge
