// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>

#include "scanforge/logic.hpp"
#include "scanforge/netlist.hpp"

namespace scanforge {

/// Behavioral flavour of a storage element: a plain D flip-flop or one of the
/// scan variants.
enum class FFKind : std::uint8_t { Dff, Mux, Gdi, Approx };

constexpr FFKind to_kind(FFVariant v) {
  switch (v) {
    case FFVariant::Mux: return FFKind::Mux;
    case FFVariant::Gdi: return FFKind::Gdi;
    case FFVariant::Approx: return FFKind::Approx;
  }
  return FFKind::Dff;
}

enum class ClockEdge : std::uint8_t { Rising, Falling };

/// Master/slave state of a negative-edge flip-flop. Q is the slave.
struct FFState {
  Logic master = Logic::X;
  Logic slave = Logic::X;
  std::uint64_t contention_count = 0;      // APPROX only: SE=1 edges where DI != SI
  std::uint64_t internal_toggle_count = 0; // 0<->1 changes of master or slave

  Logic q() const { return slave; }
  bool operator==(const FFState&) const = default;
};

/// The value presented to the master latch.
Logic ff_selected_input(FFKind kind, Logic di, Logic si, Logic se);

/// Rising edge: the master samples the selected input. Falling edge: the slave
/// takes the master and Q updates. For APPROX a rising edge with SE=1 and
/// DI != SI is a drive fight that the widened SI path wins; it is counted.
FFState ff_step(const FFState& state, FFKind kind, Logic di, Logic si, Logic se, ClockEdge edge);

}  // namespace scanforge
