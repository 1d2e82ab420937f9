// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>

#include "scanforge/netlist.hpp"

namespace scanforge {

/// Two flip-flops with Q wired straight to the next DI: no gates anywhere, so
/// the clock period reduces to t_cq + t_su.
Netlist zero_cloud_netlist();

/// `length` flip-flops, each DI driven by a NAND2 of its neighbours' outputs.
Netlist nand_chain_netlist(std::size_t length);

}  // namespace scanforge
