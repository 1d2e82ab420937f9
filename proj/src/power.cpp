// SPDX-License-Identifier: Apache-2.0
#include "scanforge/power.hpp"

#include "scanforge/error.hpp"

namespace scanforge {

PowerReport estimate_power(const ProtocolTrace& trace, FFVariant variant, Stage stage,
                           const CellLibrary& lib, double t_clk_ns, const PowerOptions& options) {
  return estimate_power(trace, lib.ff(variant, stage), lib.gates(), t_clk_ns, options);
}

PowerReport estimate_power(const ProtocolTrace& trace, const FFVariantParams& ff,
                           const GateParams& gates, double t_clk_ns, const PowerOptions& options) {
  if (!(t_clk_ns > 0)) throw Error(ErrorCode::NonpositiveInput, "clock period must be positive");
  if (!(options.contention_penalty_fj >= 0))
    throw Error(ErrorCode::NonpositiveInput, "contention penalty must be non-negative");
  for (Mode m : kAllModes) {
    if (!(ff.mode(m).avg_power_uw > 0))
      throw Error(ErrorCode::MissingParams, "no " + std::string(to_string(m)) +
                                                "-mode power for " + std::string(to_string(ff.variant)));
  }

  PowerReport r;
  r.design = trace.design;
  r.variant = ff.variant;
  r.stage = ff.stage;
  r.cycles = trace.cycle_count();
  r.t_clk_ns = t_clk_ns;

  std::size_t test_cycles = 0;
  for (const auto& rec : trace.cycles) test_cycles += rec.test_mode() ? 1 : 0;
  const std::size_t functional_cycles = r.cycles - test_cycles;
  r.mode = test_cycles > 0 ? Mode::Test : Mode::Functional;

  const double e_test = ff.energy_per_cycle_fj(Mode::Test);
  const double e_func = ff.energy_per_cycle_fj(Mode::Functional);
  for (std::size_t k = 0; k < trace.ff_ids.size(); ++k) {
    FFPower p;
    p.id = trace.ff_ids[k];
    p.test_cycles = test_cycles;
    p.functional_cycles = functional_cycles;
    if (k < trace.ledger.flip_flops.size()) p.contention = trace.ledger.flip_flops[k].contention;
    p.energy_fj = static_cast<double>(test_cycles) * e_test +
                  static_cast<double>(functional_cycles) * e_func +
                  static_cast<double>(p.contention) * options.contention_penalty_fj;
    r.ff_internal_energy_fj += p.energy_fj;
    r.contention_cycles += p.contention;
    r.per_ff.push_back(std::move(p));
  }

  for (std::size_t i = 0; i < trace.net_names.size(); ++i) {
    if (!trace.net_driver[i] || trace.ledger.net_toggles[i] == 0) continue;
    r.combinational_energy_fj +=
        static_cast<double>(trace.ledger.net_toggles[i]) * gates.at(*trace.net_driver[i]).energy_fj;
  }

  if (r.cycles > 0) {
    r.total_avg_power_uw = (r.ff_internal_energy_fj + r.combinational_energy_fj) /
                           (static_cast<double>(r.cycles) * t_clk_ns);
  }
  return r;
}

double power_gain(double reference_uw, double candidate_uw) {
  if (!(reference_uw > 0) || !(candidate_uw > 0))
    throw Error(ErrorCode::NonpositiveInput, "power values must be positive");
  return 100.0 * (reference_uw - candidate_uw) / reference_uw;
}

std::uint64_t weighted_transition_count(std::string_view vector, std::size_t chain_length) {
  if (vector.size() != chain_length)
    throw Error(ErrorCode::WidthMismatch, "vector has " + std::to_string(vector.size()) +
                                              " bits, chain length is " + std::to_string(chain_length));
  std::uint64_t wtc = 0;
  for (std::size_t i = 1; i < chain_length; ++i) {
    // 1-based position i compares b_i with b_{i+1}
    if (vector[i - 1] != vector[i]) wtc += chain_length - i;
  }
  return wtc;
}

}  // namespace scanforge
