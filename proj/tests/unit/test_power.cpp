// SPDX-License-Identifier: Apache-2.0
#include <random>

#include "doctest.h"
#include "scanforge/error.hpp"
#include "scanforge/fixtures.hpp"
#include "scanforge/power.hpp"
#include "scanforge/scan_insertion.hpp"

using namespace scanforge;

namespace {

Netlist shift_register(std::size_t k) {
  std::string text = "module r\ninput a\noutput q" + std::to_string(k) + "\n";
  std::string prev = "a";
  for (std::size_t i = 1; i <= k; ++i) {
    text += "dff f" + std::to_string(i) + " q" + std::to_string(i) + " " + prev + "\n";
    prev = "q" + std::to_string(i);
  }
  Netlist n = parse_netlist(text + "endmodule\n");
  return insert_scan(n, declaration_order_plan(n, FFVariant::Mux));
}

// Brute force: count Q-net changes while shifting `bits` into a chain that
// starts filled with the first bit.
std::uint64_t simulated_shift_toggles(const Netlist& chain, const std::string& bits) {
  SimOptions o;
  const std::size_t len = bits.size();
  o.initial_q.assign(len, bits[0] == '1' ? Logic::One : Logic::Zero);
  const ProtocolTrace t = sim_shift(chain, bits, o);
  std::vector<std::size_t> q_nets;
  for (const auto& inst : chain.instances)
    if (inst.is_flip_flop()) q_nets.push_back(t.net_index(inst.output));
  std::uint64_t n = 0;
  for (std::size_t q : q_nets) n += t.ledger.net_toggles[q];
  return n;
}

}  // namespace

TEST_CASE("ten-flip-flop chain, one vector, FF-internal energy") {
  const Netlist chain = shift_register(10);
  PatternSet p{10, {{"1010010110", std::nullopt}}};
  const ProtocolTrace t = run_scan_test(chain, p).trace;
  const CellLibrary lib = CellLibrary::builtin();
  const PowerReport r = estimate_power(t, FFVariant::Mux, Stage::PostLayout, lib, 1.0);
  CHECK(r.cycles == 21);
  CHECK(r.mode == Mode::Test);
  CHECK(r.ff_internal_energy_fj == doctest::Approx(10 * (20 * 3.81 + 3.62)));
  CHECK(r.combinational_energy_fj == 0);
  CHECK(r.total_avg_power_uw == doctest::Approx(10 * (20 * 3.81 + 3.62) / 21.0));
  const PowerReport slow = estimate_power(t, FFVariant::Mux, Stage::PostLayout, lib, 2.0);
  CHECK(slow.total_avg_power_uw == doctest::Approx(r.total_avg_power_uw / 2));
}

TEST_CASE("combinational energy charges each toggle at its driver") {
  const Netlist n = parse_netlist("module t\ninput a\noutput y\ngate g INV y a\nendmodule\n");
  Stimulus s = {{Logic::Zero}, {Logic::One}, {Logic::Zero}, {Logic::Zero}};
  const ProtocolTrace t = sim_functional(n, s, 4);
  const PowerReport r = estimate_power(t, FFVariant::Approx, Stage::PreLayout, CellLibrary::builtin(), 1.0);
  CHECK(r.combinational_energy_fj == doctest::Approx(2 * 0.3));
  CHECK(r.ff_internal_energy_fj == 0);
  CHECK(r.mode == Mode::Functional);
}

TEST_CASE("published power gains") {
  const CellLibrary lib = CellLibrary::builtin();
  auto gain = [&](FFVariant v, Mode m) {
    return power_gain(lib.ff(FFVariant::Mux, Stage::PostLayout).mode(m).avg_power_uw,
                      lib.ff(v, Stage::PostLayout).mode(m).avg_power_uw);
  };
  CHECK(gain(FFVariant::Gdi, Mode::Functional) == doctest::Approx(70.7).epsilon(0.001));
  CHECK(gain(FFVariant::Approx, Mode::Functional) == doctest::Approx(85.9).epsilon(0.001));
  CHECK(gain(FFVariant::Gdi, Mode::Test) == doctest::Approx(64.0).epsilon(0.001));
  CHECK(gain(FFVariant::Approx, Mode::Test) == doctest::Approx(85.3).epsilon(0.001));
  CHECK_THROWS_AS(power_gain(0, 1), Error);
}

TEST_CASE("weighted transition count") {
  CHECK(weighted_transition_count("0000", 4) == 0);
  CHECK(weighted_transition_count("0101", 4) == 3 + 2 + 1);
  CHECK(weighted_transition_count("1000", 4) == 3);
  CHECK(weighted_transition_count("0001", 4) == 1);
  CHECK(weighted_transition_count("1", 1) == 0);
  CHECK_THROWS_AS(weighted_transition_count("010", 4), Error);
}

TEST_CASE("weighted transition count equals simulated shift toggles") {
  for (std::size_t len = 1; len <= 6; ++len) {
    const Netlist chain = shift_register(len);
    for (std::uint32_t code = 0; code < (1u << len); ++code) {
      std::string bits;
      for (std::size_t i = 0; i < len; ++i) bits += (code >> i) & 1u ? '1' : '0';
      CHECK(weighted_transition_count(bits, len) == simulated_shift_toggles(chain, bits));
    }
  }
}

TEST_CASE("variant ordering holds on any shared trace") {
  std::mt19937_64 rng(4);
  const CellLibrary lib = CellLibrary::builtin();
  const Netlist chain = shift_register(6);
  for (int iter = 0; iter < 50; ++iter) {
    PatternSet p{6, {}};
    for (int v = 0; v < 1 + iter % 3; ++v) {
      std::string bits;
      for (int i = 0; i < 6; ++i) bits += (rng() & 1) ? '1' : '0';
      p.vectors.push_back({bits, std::nullopt});
    }
    const ProtocolTrace t = run_scan_test(chain, p).trace;
    for (Stage s : kAllStages) {
      const double mux = estimate_power(t, FFVariant::Mux, s, lib, 1.0).total_avg_power_uw;
      const double gdi = estimate_power(t, FFVariant::Gdi, s, lib, 1.0).total_avg_power_uw;
      const double apx = estimate_power(t, FFVariant::Approx, s, lib, 1.0).total_avg_power_uw;
      CHECK(apx < gdi);
      CHECK(gdi < mux);
    }
  }
}

TEST_CASE("scaling power by k scales the FF-internal estimate by 1/k") {
  const Netlist chain = shift_register(4);
  const ProtocolTrace t = run_scan_test(chain, PatternSet{4, {{"0110", std::nullopt}}}).trace;
  const FFVariantParams base = builtin_params(FFVariant::Approx, Stage::PostLayout);
  const GateParams gates = GateParams::defaults();
  for (double k : {0.5, 2.0, 7.0}) {
    const FFVariantParams scaled = scale_params(base, {1, k, 1});
    CHECK(estimate_power(t, scaled, gates, 1.0).ff_internal_energy_fj ==
          doctest::Approx(estimate_power(t, base, gates, 1.0).ff_internal_energy_fj / k));
  }
}

TEST_CASE("APPROX contention is counted and optionally charged") {
  const Netlist n = parse_netlist(
      "module c\ninput d SI SE\noutput SO\nscanff f APPROX SO d SI SE\nendmodule\n");
  PatternSet p{1, {{"1", std::nullopt}}};
  SimOptions o;
  o.test_input_value = Logic::Zero;
  const ProtocolTrace t = run_scan_test(n, p, o).trace;
  const CellLibrary lib = CellLibrary::builtin();
  const PowerReport plain = estimate_power(t, FFVariant::Approx, Stage::PostLayout, lib, 1.0);
  CHECK(plain.contention_cycles >= 1);
  PowerOptions po;
  po.contention_penalty_fj = 2.0;
  const PowerReport charged = estimate_power(t, FFVariant::Approx, Stage::PostLayout, lib, 1.0, po);
  CHECK(charged.ff_internal_energy_fj ==
        doctest::Approx(plain.ff_internal_energy_fj + 2.0 * static_cast<double>(plain.contention_cycles)));
}

TEST_CASE("bad power inputs") {
  const ProtocolTrace t = sim_functional(zero_cloud_netlist(), {{Logic::Zero}}, 1);
  CHECK_THROWS_AS(estimate_power(t, FFVariant::Mux, Stage::PostLayout, CellLibrary::builtin(), 0), Error);
  PowerOptions po;
  po.contention_penalty_fj = -1;
  CHECK_THROWS_AS(estimate_power(t, FFVariant::Mux, Stage::PostLayout, CellLibrary::builtin(), 1, po), Error);
}
