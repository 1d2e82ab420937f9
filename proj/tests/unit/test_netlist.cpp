// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <random>
#include <set>

#include "doctest.h"
#include "oracles.hpp"
#include "scanforge/error.hpp"
#include "scanforge/netlist.hpp"

using namespace scanforge;

namespace {

ErrorCode code_of(std::string_view text) {
  try {
    parse_netlist(text);
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("netlist was accepted");
  return ErrorCode::Io;
}

// Depth-first check that every gate input is a PI, a flip-flop output or the
// output of a gate placed earlier in `order`.
bool order_is_topological(const NetlistIndex& idx) {
  std::set<std::string> ready(idx.netlist().inputs.begin(), idx.netlist().inputs.end());
  for (std::size_t f : idx.flip_flops()) ready.insert(idx.instance(f).output);
  for (std::size_t g : idx.gate_order()) {
    for (const auto& in : idx.instance(g).inputs)
      if (!ready.count(in)) return false;
    ready.insert(idx.instance(g).output);
  }
  return true;
}

}  // namespace

TEST_CASE("parses the two-flip-flop fixture") {
  Netlist n = parse_netlist(
      "module zero_cloud\ninput a\noutput q2\n# comment line\ndff f1 q1 a  # trailing\ndff f2 q2 q1\nendmodule\n");
  CHECK(n.name == "zero_cloud");
  CHECK(n.inputs == std::vector<std::string>{"a"});
  CHECK(n.outputs == std::vector<std::string>{"q2"});
  REQUIRE(n.instances.size() == 2);
  CHECK(n.instances[0].kind == InstanceKind::Dff);
  CHECK(n.instances[1].inputs == std::vector<std::string>{"q1"});
}

TEST_CASE("scanff lines carry variant and pin order") {
  Netlist n = parse_netlist(
      "module m\ninput d SI SE\noutput SO\nscanff f1 APPROX SO d SI SE\nendmodule\n");
  REQUIRE(n.instances.size() == 1);
  const Instance& f = n.instances[0];
  CHECK(f.kind == InstanceKind::ScanFF);
  CHECK(f.variant == FFVariant::Approx);
  CHECK(f.inputs[kScanPinDI] == "d");
  CHECK(f.inputs[kScanPinSI] == "SI");
  CHECK(f.inputs[kScanPinSE] == "SE");
}

TEST_CASE("each malformed netlist maps to its own error kind") {
  CHECK(code_of("module m\ninput a\noutput y\ngate g1 AND2 y a a\ngate g1 INV z a\nendmodule\n") ==
        ErrorCode::DuplicateInstance);
  CHECK(code_of("module m\ninput a\noutput y\ngate g1 INV y a\ngate g2 BUF y a\nendmodule\n") ==
        ErrorCode::MultiplyDrivenNet);
  CHECK(code_of("module m\ninput a\noutput y\ngate g1 AND2 y a b\nendmodule\n") == ErrorCode::UndeclaredNet);
  CHECK(code_of("module m\ninput a\noutput y\ngate g1 AND2 y a z\ngate g2 INV z y\nendmodule\n") ==
        ErrorCode::CombinationalCycle);
  CHECK(code_of("module m\ninput a\noutput y\ngate g1 FOO y a\nendmodule\n") == ErrorCode::NetlistSyntax);
  CHECK(code_of("module m\ninput a\noutput y\ngate g1 INV y a b\nendmodule\n") == ErrorCode::NetlistSyntax);
  CHECK(code_of("module m\ninput a\noutput y\ngate g1 INV y a\n") == ErrorCode::NetlistSyntax);
  CHECK(code_of("module m\ninput a\noutput q\ndff f q a\nendmodule\nextra\n") == ErrorCode::NetlistSyntax);
  CHECK(code_of("module m\ninput a\noutput y\ndff f q a\nendmodule\n") == ErrorCode::UndeclaredNet);
}

TEST_CASE("a cycle through a flip-flop is legal") {
  CHECK_NOTHROW(parse_netlist("module t\ninput a\noutput q\ngate g XOR2 d a q\ndff f q d\nendmodule\n"));
}

TEST_CASE("syntax errors report line and column") {
  try {
    parse_netlist("module m\ninput a\noutput y\ngate g1 INV y a\n  bogus y\nendmodule\n");
    FAIL("accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NetlistSyntax);
    REQUIRE(e.where());
    CHECK(e.where()->line == 5);
    CHECK(e.where()->column == 3);
  }
}

TEST_CASE("the clock net is reserved") {
  CHECK_THROWS_AS(parse_netlist("module m\ninput CLK\noutput y\ngate g INV y CLK\nendmodule\n"), Error);
}

TEST_CASE("serialization round-trips and is idempotent on random netlists") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 300; ++i) {
    Netlist n = testing::random_netlist(rng);
    const std::string text = serialize_netlist(n);
    Netlist back = parse_netlist(text);
    CHECK(back == n);
    CHECK(serialize_netlist(back) == text);
  }
}

TEST_CASE("gate order is topological on random netlists") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 300; ++i) {
    NetlistIndex idx(testing::random_netlist(rng));
    CHECK(idx.gate_order().size() + idx.flip_flops().size() == idx.netlist().instances.size());
    CHECK(order_is_topological(idx));
  }
}

TEST_CASE("rewiring one output onto a used net is always rejected") {
  std::mt19937_64 rng(3);
  int mutated = 0;
  for (int i = 0; i < 200; ++i) {
    Netlist n = testing::random_netlist(rng);
    if (n.instances.size() < 2) continue;
    std::size_t a = rng() % n.instances.size();
    std::size_t b = (a + 1 + rng() % (n.instances.size() - 1)) % n.instances.size();
    n.instances[a].output = n.instances[b].output;
    ++mutated;
    CHECK_THROWS_AS(validate_netlist(n), Error);
  }
  CHECK(mutated > 100);
}

TEST_CASE("gate evaluation agrees with the reference truth tables") {
  const Logic vals[] = {Logic::Zero, Logic::One, Logic::X};
  for (GateType t : kAllGateTypes)
    for (Logic a : vals)
      for (Logic b : vals) {
        Logic bb = gate_arity(t) == 2 ? b : Logic::X;
        CHECK(eval_gate(t, a, bb) == testing::reference_gate(t, a, bb));
      }
}

TEST_CASE("variant names parse case-insensitively") {
  CHECK(parse_variant("mux") == FFVariant::Mux);
  CHECK(parse_variant("GDI") == FFVariant::Gdi);
  CHECK(parse_variant("Approx") == FFVariant::Approx);
  CHECK_FALSE(parse_variant("lssd"));
}
