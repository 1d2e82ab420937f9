// SPDX-License-Identifier: Apache-2.0
#include "doctest.h"
#include "scanforge/ff_behavior.hpp"
#include "scanforge/ff_equivalence.hpp"

using namespace scanforge;

namespace {

constexpr FFKind kScanKinds[] = {FFKind::Mux, FFKind::Gdi, FFKind::Approx};

FFState clock(FFState s, FFKind k, Logic di, Logic si, Logic se) {
  s = ff_step(s, k, di, si, se, ClockEdge::Rising);
  return ff_step(s, k, Logic::X, Logic::X, Logic::X, ClockEdge::Falling);
}

}  // namespace

TEST_CASE("Q follows the selected input after one full cycle") {
  for (FFKind k : kScanKinds) {
    FFState s;
    CHECK(s.q() == Logic::X);
    s = clock(s, k, Logic::One, Logic::Zero, Logic::Zero);
    CHECK(s.q() == Logic::One);
    s = clock(s, k, Logic::One, Logic::Zero, Logic::One);
    CHECK(s.q() == Logic::Zero);
  }
  FFState d;
  d = clock(d, FFKind::Dff, Logic::One, Logic::X, Logic::X);
  CHECK(d.q() == Logic::One);
}

TEST_CASE("the rising edge never changes Q") {
  for (FFKind k : kScanKinds)
    for (auto& seq : exhaustive_sequences(3)) {
      FFState s;
      for (const auto& c : seq) {
        FFState r = ff_step(s, k, c.di, c.si, c.se, ClockEdge::Rising);
        CHECK(r.q() == s.q());
        s = ff_step(r, k, Logic::X, Logic::X, Logic::X, ClockEdge::Falling);
      }
    }
}

TEST_CASE("unknown scan enable merges the two inputs") {
  CHECK(ff_selected_input(FFKind::Mux, Logic::One, Logic::One, Logic::X) == Logic::One);
  CHECK(ff_selected_input(FFKind::Gdi, Logic::One, Logic::Zero, Logic::X) == Logic::X);
  CHECK(ff_selected_input(FFKind::Approx, Logic::Zero, Logic::X, Logic::Zero) == Logic::Zero);
}

TEST_CASE("all variants produce identical Q for every 8-cycle binary stimulus") {
  auto bit = [](std::uint32_t code, int i) { return (code >> i) & 1u ? Logic::One : Logic::Zero; };
  std::size_t differing = 0;
  for (std::uint32_t code = 0; code < (1u << 24); ++code) {
    FFState a, b, c;
    for (int cyc = 0; cyc < 8; ++cyc) {
      const Logic di = bit(code, 3 * cyc), si = bit(code, 3 * cyc + 1), se = bit(code, 3 * cyc + 2);
      a = clock(a, FFKind::Mux, di, si, se);
      b = clock(b, FFKind::Gdi, di, si, se);
      c = clock(c, FFKind::Approx, di, si, se);
      if (a.q() != b.q() || a.q() != c.q()) {
        ++differing;
        break;
      }
    }
  }
  CHECK(differing == 0);
}

TEST_CASE("contention and toggle counters against a hand count") {
  // di, si, se per cycle
  const FFSequence seq = {{Logic::One, Logic::Zero, Logic::One},   // fight, master 0
                          {Logic::One, Logic::One, Logic::One},    // no fight, master 1
                          {Logic::Zero, Logic::One, Logic::One},   // fight, master 1
                          {Logic::Zero, Logic::One, Logic::Zero},  // functional, master 0
                          {Logic::One, Logic::Zero, Logic::One}};  // fight, master 0
  FFState s;
  for (const auto& c : seq) s = clock(s, FFKind::Approx, c.di, c.si, c.se);
  CHECK(s.contention_count == 3);
  // master 0,1,1,0,0 and slave 0,1,1,0,0: X->0 is not a toggle, then 2 changes each
  CHECK(s.internal_toggle_count == 4);

  FFState m;
  for (const auto& c : seq) m = clock(m, FFKind::Mux, c.di, c.si, c.se);
  CHECK(m.contention_count == 0);
  CHECK(m.internal_toggle_count == 4);
}
