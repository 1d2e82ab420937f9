// SPDX-License-Identifier: Apache-2.0
#include "scanforge/protocol_sim.hpp"

#include <algorithm>
#include <bit>
#include <ostream>

#include "scanforge/error.hpp"
#include "scanforge/scan_insertion.hpp"

namespace scanforge {

std::string_view to_string(ProtocolPhase p) {
  switch (p) {
    case ProtocolPhase::Functional: return "functional";
    case ProtocolPhase::ShiftIn: return "shift_in";
    case ProtocolPhase::Capture: return "capture";
    case ProtocolPhase::ShiftOut: return "shift_out";
  }
  return "?";
}

std::uint64_t ToggleLedger::total_net_toggles() const {
  std::uint64_t t = 0;
  for (auto c : net_toggles) t += c;
  return t;
}

std::size_t ProtocolTrace::net_index(std::string_view name) const {
  auto it = std::find(net_names.begin(), net_names.end(), name);
  if (it == net_names.end())
    throw Error(ErrorCode::UndeclaredNet, "trace has no net '" + std::string(name) + "'");
  return static_cast<std::size_t>(it - net_names.begin());
}

Logic ProtocolTrace::value(std::size_t cycle, std::string_view net) const {
  return cycles.at(cycle).nets.at(net_index(net));
}

std::size_t cycle_budget(std::size_t chain_length, std::size_t num_vectors, bool pipelined) {
  if (pipelined) return chain_length + num_vectors * (chain_length + 1);
  return num_vectors * (2 * chain_length + 1);
}

std::vector<std::string> functional_inputs(const Netlist& n) {
  if (!has_scan_chain(n)) return n.inputs;
  ScanChainPlan plan = verify_chain(n);
  std::vector<std::string> out;
  for (const auto& in : n.inputs)
    if (in != plan.scan_in && in != plan.scan_enable) out.push_back(in);
  return out;
}

namespace {

class Engine {
 public:
  Engine(const Netlist& n, const SimOptions& opts) : index_(n), opts_(opts) {
    const auto& ffs = index_.flip_flops();
    states_.resize(ffs.size());
    kinds_.reserve(ffs.size());
    for (std::size_t k = 0; k < ffs.size(); ++k) {
      const Instance& inst = index_.instance(ffs[k]);
      kinds_.push_back(inst.kind == InstanceKind::ScanFF ? to_kind(inst.variant) : FFKind::Dff);
      if (k < opts.initial_q.size()) {
        states_[k].master = states_[k].slave = opts.initial_q[k];
      }
    }
    if (!opts.initial_q.empty() && opts.initial_q.size() != ffs.size())
      throw Error(ErrorCode::StimulusMismatch, "initial state lists " +
                                                   std::to_string(opts.initial_q.size()) +
                                                   " flip-flops, netlist has " +
                                                   std::to_string(ffs.size()));
    values_.assign(index_.net_count(), Logic::X);

    if (has_scan_chain(n)) {
      plan_ = verify_chain(n);
      se_ = index_.net(plan_->scan_enable);
      si_ = index_.net(plan_->scan_in);
      so_ = index_.net(plan_->scan_out);
    }
    for (const auto& name : functional_inputs(n)) func_inputs_.push_back(index_.net(name));

    trace_.design = n.name;
    for (NetId id = 0; id < index_.net_count(); ++id) {
      trace_.net_names.push_back(index_.net_name(id));
      int d = index_.driver(id);
      if (d >= 0 && index_.instance(static_cast<std::size_t>(d)).kind == InstanceKind::Gate)
        trace_.net_driver.emplace_back(index_.instance(static_cast<std::size_t>(d)).gate);
      else
        trace_.net_driver.emplace_back(std::nullopt);
    }
    for (std::size_t ff : ffs) trace_.ff_ids.push_back(index_.instance(ff).id);
    trace_.ledger.net_toggles.assign(index_.net_count(), 0);
    x_reported_.assign(ffs.size(), false);
  }

  const NetlistIndex& index() const { return index_; }
  const std::optional<ScanChainPlan>& plan() const { return plan_; }
  std::size_t functional_input_count() const { return func_inputs_.size(); }

  /// Runs one clock cycle and returns the SO value seen before the edge.
  Logic cycle(const std::vector<Logic>& pi, Logic se, Logic si, ProtocolPhase phase, bool launch,
              bool unload) {
    for (std::size_t i = 0; i < func_inputs_.size(); ++i) values_[func_inputs_[i]] = pi[i];
    if (se_) values_[*se_] = se;
    if (si_) values_[*si_] = si;
    settle_combinational();

    CycleRecord rec;
    rec.cycle = trace_.cycles.size();
    rec.phase = phase;
    rec.launch = launch;
    rec.unload = unload;
    rec.se = se_ ? se : Logic::Zero;
    rec.si = si_ ? si : Logic::X;
    rec.so = so_ ? values_[*so_] : Logic::X;
    rec.nets = kernels::BitPlanes::pack(values_);
    observe(rec.nets);
    trace_.cycles.push_back(std::move(rec));
    tally(phase, launch);

    clock_edges(trace_.cycles.back().cycle, phase);
    return trace_.cycles.back().so;
  }

  ProtocolTrace finish() {
    settle_combinational();
    trace_.final_nets = kernels::BitPlanes::pack(values_);
    if (!trace_.cycles.empty()) observe(trace_.final_nets);
    for (std::size_t k = 0; k < states_.size(); ++k) {
      trace_.ledger.flip_flops.push_back(
          {trace_.ff_ids[k], states_[k].internal_toggle_count, states_[k].contention_count});
    }
    return std::move(trace_);
  }

 private:
  void settle_combinational() {
    const auto& ffs = index_.flip_flops();
    for (std::size_t k = 0; k < ffs.size(); ++k) values_[index_.instance_output(ffs[k])] = states_[k].q();
    for (std::size_t g : index_.gate_order()) {
      const auto& in = index_.instance_inputs(g);
      Logic a = values_[in[0]];
      Logic b = in.size() > 1 ? values_[in[1]] : Logic::X;
      values_[index_.instance_output(g)] = eval_gate(index_.instance(g).gate, a, b);
    }
  }

  void observe(const kernels::BitPlanes& cur) {
    if (have_prev_) {
      const std::uint64_t n = kernels::count_toggles(prev_, cur);
      trace_.ledger.step_toggles.push_back(n);
      if (n == 0) {
        prev_ = cur;
        return;
      }
      for (std::size_t w = 0; w < cur.value.size(); ++w) {
        std::uint64_t diff = (prev_.value[w] ^ cur.value[w]) & prev_.known[w] & cur.known[w];
        while (diff) {
          int bit = std::countr_zero(diff);
          ++trace_.ledger.net_toggles[w * 64 + static_cast<std::size_t>(bit)];
          diff &= diff - 1;
        }
      }
    }
    prev_ = cur;
    have_prev_ = true;
  }

  void tally(ProtocolPhase phase, bool launch) {
    auto& t = trace_.totals;
    switch (phase) {
      case ProtocolPhase::Functional: ++t.functional; break;
      case ProtocolPhase::ShiftIn: ++t.shift_in; break;
      case ProtocolPhase::Capture: ++t.capture; break;
      case ProtocolPhase::ShiftOut: ++t.shift_out; break;
    }
    if (launch) ++t.launch;
  }

  void clock_edges(std::size_t cycle_no, ProtocolPhase phase) {
    // shift cycles fill the chain from an unknown state, X there is expected
    const bool shifting = phase == ProtocolPhase::ShiftIn || phase == ProtocolPhase::ShiftOut;
    const auto& ffs = index_.flip_flops();
    for (std::size_t k = 0; k < ffs.size(); ++k) {
      const auto& in = index_.instance_inputs(ffs[k]);
      Logic di = values_[in[0]];
      Logic si = in.size() > kScanPinSI ? values_[in[kScanPinSI]] : Logic::X;
      Logic se = in.size() > kScanPinSE ? values_[in[kScanPinSE]] : Logic::Zero;
      if (!shifting && cycle_no >= opts_.x_warmup_cycles && !x_reported_[k] &&
          ff_selected_input(kinds_[k], di, si, se) == Logic::X) {
        x_reported_[k] = true;
        trace_.warnings.push_back("X at input of flip-flop '" + trace_.ff_ids[k] + "' in cycle " +
                                  std::to_string(cycle_no));
      }
      states_[k] = ff_step(states_[k], kinds_[k], di, si, se, ClockEdge::Rising);
    }
    for (std::size_t k = 0; k < ffs.size(); ++k)
      states_[k] = ff_step(states_[k], kinds_[k], Logic::X, Logic::X, Logic::X, ClockEdge::Falling);
  }

  NetlistIndex index_;
  SimOptions opts_;
  std::vector<FFState> states_;
  std::vector<FFKind> kinds_;
  std::vector<Logic> values_;
  std::optional<ScanChainPlan> plan_;
  std::optional<NetId> se_, si_, so_;
  std::vector<NetId> func_inputs_;
  ProtocolTrace trace_;
  kernels::BitPlanes prev_;
  bool have_prev_ = false;
  std::vector<bool> x_reported_;
};

}  // namespace

ProtocolTrace sim_functional(const Netlist& n, const Stimulus& stimulus, std::size_t cycles,
                             const SimOptions& options) {
  Engine eng(n, options);
  const std::size_t width = eng.functional_input_count();
  if (width > 0 && stimulus.size() < cycles)
    throw Error(ErrorCode::StimulusMismatch, "stimulus covers " + std::to_string(stimulus.size()) +
                                                 " of " + std::to_string(cycles) + " cycles");
  std::vector<Logic> none;
  for (std::size_t c = 0; c < cycles; ++c) {
    const std::vector<Logic>& pi = width > 0 ? stimulus[c] : none;
    if (pi.size() != width)
      throw Error(ErrorCode::StimulusMismatch, "cycle " + std::to_string(c) + " drives " +
                                                   std::to_string(pi.size()) + " inputs, expected " +
                                                   std::to_string(width));
    eng.cycle(pi, Logic::Zero, Logic::Zero, ProtocolPhase::Functional, false, false);
  }
  return eng.finish();
}

namespace {

Logic bit_at(std::string_view bits, std::size_t i) { return bits[i] == '1' ? Logic::One : Logic::Zero; }

bool response_matches(std::string_view expected, std::string_view got) {
  for (std::size_t i = 0; i < expected.size(); ++i) {
    if (expected[i] == 'x' || expected[i] == 'X') continue;
    if (i >= got.size() || got[i] != expected[i]) return false;
  }
  return true;
}

}  // namespace

ScanTestResult run_scan_test(const Netlist& n, const PatternSet& patterns, const SimOptions& options) {
  Engine eng(n, options);
  if (!eng.plan()) throw Error(ErrorCode::NoFlipFlops, "netlist has no scan chain");
  const std::size_t len = eng.plan()->order.size();
  if (patterns.chain_length != len)
    throw Error(ErrorCode::PatternWidthMismatch, "patterns are " +
                                                     std::to_string(patterns.chain_length) +
                                                     " bits wide, chain has " + std::to_string(len) +
                                                     " flip-flops");
  const std::vector<Logic> pi(eng.functional_input_count(), options.test_input_value);
  const auto& vecs = patterns.vectors;

  ScanTestResult result;
  auto shift_in = [&](const ScanVector& v) {
    for (std::size_t k = 0; k < len; ++k)
      eng.cycle(pi, Logic::One, bit_at(v.bits, k), ProtocolPhase::ShiftIn, k + 1 == len, false);
  };
  auto capture = [&] { eng.cycle(pi, Logic::Zero, Logic::Zero, ProtocolPhase::Capture, false, false); };

  if (!vecs.empty() && options.pipelined) shift_in(vecs.front());
  for (std::size_t v = 0; v < vecs.size(); ++v) {
    if (!options.pipelined) shift_in(vecs[v]);
    capture();
    const ScanVector* next = options.pipelined && v + 1 < vecs.size() ? &vecs[v + 1] : nullptr;
    std::string response;
    for (std::size_t k = 0; k < len; ++k) {
      Logic si = next ? bit_at(next->bits, k) : Logic::Zero;
      ProtocolPhase ph = next ? ProtocolPhase::ShiftIn : ProtocolPhase::ShiftOut;
      response += to_char(eng.cycle(pi, Logic::One, si, ph, next && k + 1 == len, true));
    }
    if (vecs[v].expected && !response_matches(*vecs[v].expected, response)) ++result.mismatches;
    result.responses.push_back(std::move(response));
  }
  result.trace = eng.finish();
  return result;
}

ProtocolTrace sim_shift(const Netlist& n, std::string_view si_bits, const SimOptions& options) {
  Engine eng(n, options);
  if (!eng.plan()) throw Error(ErrorCode::NoFlipFlops, "netlist has no scan chain");
  const std::vector<Logic> pi(eng.functional_input_count(), options.test_input_value);
  for (char c : si_bits) {
    auto v = logic_from_char(c);
    if (!v) throw Error(ErrorCode::PatternIllegalCharacter, std::string("illegal shift bit '") + c + "'");
    eng.cycle(pi, Logic::One, *v, ProtocolPhase::ShiftIn, false, true);
  }
  return eng.finish();
}

// ---------------------------------------------------------------------------

namespace {

std::string vcd_id(std::size_t i) {
  std::string id;
  do {
    id += static_cast<char>('!' + i % 94);
    i /= 94;
  } while (i > 0);
  return id;
}

}  // namespace

void write_vcd(const ProtocolTrace& trace, std::ostream& os) {
  os << "$timescale 1ns $end\n";
  os << "$scope module " << trace.design << " $end\n";
  for (std::size_t i = 0; i < trace.net_names.size(); ++i)
    os << "$var wire 1 " << vcd_id(i) << ' ' << trace.net_names[i] << " $end\n";
  os << "$upscope $end\n$enddefinitions $end\n";

  const kernels::BitPlanes* prev = nullptr;
  auto dump = [&](std::size_t time, const kernels::BitPlanes& cur) {
    os << '#' << time << '\n';
    for (std::size_t i = 0; i < trace.net_names.size(); ++i) {
      Logic v = cur.at(i);
      if (prev && prev->at(i) == v) continue;
      os << to_char(v) << vcd_id(i) << '\n';
    }
    prev = &cur;
  };
  for (const auto& rec : trace.cycles) dump(rec.cycle, rec.nets);
  if (!trace.cycles.empty()) dump(trace.cycles.size(), trace.final_nets);
}

}  // namespace scanforge
