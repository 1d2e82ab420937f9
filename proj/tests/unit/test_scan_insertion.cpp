// SPDX-License-Identifier: Apache-2.0
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "scanforge/error.hpp"
#include "scanforge/fixtures.hpp"
#include "scanforge/scan_insertion.hpp"

using namespace scanforge;

namespace {

ErrorCode verify_error(const Netlist& n) {
  try {
    verify_chain(n);
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::Io;
}

Netlist registers(std::size_t k) {
  std::string text = "module r\ninput a\noutput q" + std::to_string(k) + "\n";
  std::string prev = "a";
  for (std::size_t i = 1; i <= k; ++i) {
    text += "gate g" + std::to_string(i) + " INV d" + std::to_string(i) + " " + prev + "\n";
    text += "dff f" + std::to_string(i) + " q" + std::to_string(i) + " d" + std::to_string(i) + "\n";
    prev = "q" + std::to_string(i);
  }
  return parse_netlist(text + "endmodule\n");
}

}  // namespace

TEST_CASE("insertion on 1, 3 and 10 flip-flops") {
  for (std::size_t k : {1u, 3u, 10u}) {
    const Netlist n = registers(k);
    for (FFVariant v : kAllVariants) {
      const ScanChainPlan plan = declaration_order_plan(n, v);
      const Netlist s = insert_scan(n, plan);
      CHECK(s.inputs.size() == n.inputs.size() + 2);
      CHECK(std::count(s.outputs.begin(), s.outputs.end(), "SO") == 1);
      CHECK(s.instances.size() == n.instances.size());
      std::size_t scanffs = 0;
      for (const auto& inst : s.instances) {
        CHECK(inst.kind != InstanceKind::Dff);
        if (inst.kind == InstanceKind::ScanFF) {
          ++scanffs;
          CHECK(inst.variant == v);
          CHECK(inst.inputs[kScanPinSE] == "SE");
        }
      }
      CHECK(scanffs == k);
      CHECK(verify_chain(s) == plan);
      CHECK(parse_netlist(serialize_netlist(s)) == s);
    }
  }
}

TEST_CASE("DI pins keep their drivers") {
  const Netlist n = nand_chain_netlist(4);
  const Netlist s = insert_scan(n, declaration_order_plan(n, FFVariant::Gdi));
  for (std::size_t i = 0; i < n.instances.size(); ++i) {
    if (!n.instances[i].is_flip_flop()) continue;
    CHECK(s.instances[i].inputs[kScanPinDI] == n.instances[i].inputs[0]);
  }
}

TEST_CASE("custom order stitches in that order") {
  const Netlist n = registers(3);
  ScanChainPlan plan{FFVariant::Approx, {"f3", "f1", "f2"}};
  const Netlist s = insert_scan(n, plan);
  CHECK(verify_chain(s).order == plan.order);
}

TEST_CASE("insertion errors") {
  const Netlist n = registers(3);
  auto code = [](const Netlist& nl, const ScanChainPlan& p) {
    try {
      insert_scan(nl, p);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::Io;
  };
  CHECK(code(n, {FFVariant::Mux, {"f1", "f2"}}) == ErrorCode::PlanMismatch);
  CHECK(code(n, {FFVariant::Mux, {"f1", "f2", "f2"}}) == ErrorCode::PlanMismatch);
  CHECK(code(n, {FFVariant::Mux, {"f1", "f2", "g1"}}) == ErrorCode::PlanMismatch);
  const Netlist inserted = insert_scan(n, declaration_order_plan(n, FFVariant::Mux));
  CHECK(code(inserted, declaration_order_plan(n, FFVariant::Mux)) == ErrorCode::AlreadyInserted);
  const Netlist comb = parse_netlist("module c\ninput a\noutput y\ngate g INV y a\nendmodule\n");
  CHECK(code(comb, {FFVariant::Mux, {}}) == ErrorCode::NoFlipFlops);
  const Netlist clash = parse_netlist("module c\ninput SE\noutput q\ndff f q SE\nendmodule\n");
  CHECK(code(clash, declaration_order_plan(clash, FFVariant::Mux)) == ErrorCode::NameCollision);
}

TEST_CASE("a corrupted chain is reported as broken") {
  const Netlist n = registers(3);
  Netlist s = insert_scan(n, declaration_order_plan(n, FFVariant::Mux));
  for (auto& inst : s.instances)
    if (inst.id == "f2") inst.inputs[kScanPinSI] = "d1";  // a gate output
  CHECK(verify_error(s) == ErrorCode::BrokenChain);
}

TEST_CASE("mixed variants and second chains are rejected") {
  const Netlist n = registers(3);
  Netlist s = insert_scan(n, declaration_order_plan(n, FFVariant::Mux));
  Netlist mixed = s;
  mixed.instances[3].variant = FFVariant::Approx;
  CHECK(verify_error(mixed) == ErrorCode::MixedVariants);

  Netlist two = parse_netlist(
      "module t\ninput a SI SE SI2\noutput q2 q3\n"
      "scanff f1 MUX q1 a SI SE\nscanff f2 MUX q2 q1 q1 SE\nscanff f3 MUX q3 a SI2 SE\nendmodule\n");
  CHECK(verify_error(two) == ErrorCode::MultipleChains);
}

TEST_CASE("verify_chain round-trips random insertions") {
  std::mt19937_64 rng(17);
  testing::RandomNetlistShape shape;
  shape.min_ffs = 1;
  shape.max_ffs = 6;
  for (int i = 0; i < 300; ++i) {
    const Netlist n = testing::random_netlist(rng, shape);
    const FFVariant v = kAllVariants[rng() % 3];
    ScanChainPlan plan = declaration_order_plan(n, v);
    std::shuffle(plan.order.begin(), plan.order.end(), rng);
    const Netlist s = insert_scan(n, plan);
    CHECK(verify_chain(s) == plan);
    CHECK_THROWS_AS(insert_scan(s, plan), Error);
  }
}
