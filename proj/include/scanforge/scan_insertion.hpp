// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "scanforge/netlist.hpp"

namespace scanforge {

struct ScanChainPlan {
  FFVariant variant = FFVariant::Mux;
  std::vector<std::string> order;  // flip-flop ids, SI side first
  std::string scan_in = "SI";
  std::string scan_out = "SO";
  std::string scan_enable = "SE";

  bool operator==(const ScanChainPlan&) const = default;
};

/// Plan that stitches the flip-flops in declaration order.
ScanChainPlan declaration_order_plan(const Netlist& n, FFVariant variant);

/// Replaces every dff with a scanff of plan.variant and stitches a single
/// chain scan_in -> order[0] -> ... -> order[k-1]. The last flip-flop's Q net
/// becomes scan_out. DI pins and Q fanout are untouched.
Netlist insert_scan(const Netlist& n, const ScanChainPlan& plan);

/// Recovers the unique chain through the scanff SI pins.
ScanChainPlan verify_chain(const Netlist& n);

/// True when the netlist holds scan flip-flops.
bool has_scan_chain(const Netlist& n);

}  // namespace scanforge
