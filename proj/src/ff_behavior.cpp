// SPDX-License-Identifier: Apache-2.0
#include "scanforge/ff_behavior.hpp"

namespace scanforge {

Logic ff_selected_input(FFKind kind, Logic di, Logic si, Logic se) {
  if (kind == FFKind::Dff) return di;
  switch (se) {
    case Logic::Zero: return di;
    case Logic::One: return si;
    default: return logic_merge(di, si);
  }
}

namespace {

bool toggled(Logic before, Logic after) {
  return is_known(before) && is_known(after) && before != after;
}

}  // namespace

FFState ff_step(const FFState& state, FFKind kind, Logic di, Logic si, Logic se,
                ClockEdge edge) {
  FFState next = state;
  if (edge == ClockEdge::Rising) {
    next.master = ff_selected_input(kind, di, si, se);
    if (toggled(state.master, next.master)) ++next.internal_toggle_count;
    if (kind == FFKind::Approx && se == Logic::One && is_known(di) && is_known(si) && di != si)
      ++next.contention_count;
  } else {
    next.slave = state.master;
    if (toggled(state.slave, next.slave)) ++next.internal_toggle_count;
  }
  return next;
}

}  // namespace scanforge
