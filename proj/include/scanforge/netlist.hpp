// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "scanforge/logic.hpp"

namespace scanforge {

enum class GateType : std::uint8_t { Inv, Buf, Nand2, Nor2, And2, Or2, Xor2 };
enum class FFVariant : std::uint8_t { Mux, Gdi, Approx };
enum class InstanceKind : std::uint8_t { Gate, Dff, ScanFF };

inline constexpr GateType kAllGateTypes[] = {GateType::Inv,  GateType::Buf, GateType::Nand2,
                                             GateType::Nor2, GateType::And2, GateType::Or2,
                                             GateType::Xor2};
inline constexpr FFVariant kAllVariants[] = {FFVariant::Mux, FFVariant::Gdi, FFVariant::Approx};

std::string_view to_string(GateType t);
std::string_view to_string(FFVariant v);
std::optional<GateType> parse_gate_type(std::string_view s);
/// Accepts "MUX"/"mux" etc.
std::optional<FFVariant> parse_variant(std::string_view s);
int gate_arity(GateType t);
Logic eval_gate(GateType t, Logic a, Logic b = Logic::X);

/// Pin order: gate -> operands; dff -> {DI}; scanff -> {DI, SI, SE}.
struct Instance {
  std::string id;
  InstanceKind kind = InstanceKind::Gate;
  GateType gate = GateType::Buf;      // meaningful for gates
  FFVariant variant = FFVariant::Mux; // meaningful for scanffs
  std::string output;
  std::vector<std::string> inputs;

  bool is_flip_flop() const { return kind != InstanceKind::Gate; }
  bool operator==(const Instance&) const = default;
};

inline constexpr std::size_t kScanPinDI = 0;
inline constexpr std::size_t kScanPinSI = 1;
inline constexpr std::size_t kScanPinSE = 2;

/// The implicit global clock. Never appears in the text format.
inline constexpr std::string_view kClockNet = "CLK";

struct Netlist {
  std::string name;
  std::vector<std::string> inputs;
  std::vector<std::string> outputs;
  std::vector<Instance> instances;

  bool operator==(const Netlist&) const = default;
};

using NetId = std::uint32_t;
inline constexpr int kPrimaryInputDriver = -1;

/// Compiled, validated view of a Netlist: dense net ids, drivers, fanout and
/// a topological order of the gates (flip-flops cut the graph).
///
/// Construction enforces every structural invariant and throws Error with
/// DuplicateInstance, MultiplyDrivenNet, UndeclaredNet or CombinationalCycle.
class NetlistIndex {
 public:
  explicit NetlistIndex(Netlist netlist);

  const Netlist& netlist() const noexcept { return netlist_; }
  std::size_t net_count() const noexcept { return net_names_.size(); }
  const std::string& net_name(NetId id) const { return net_names_[id]; }
  std::optional<NetId> find_net(std::string_view name) const;
  NetId net(std::string_view name) const;  // throws UndeclaredNet

  /// Instance index driving the net, or kPrimaryInputDriver.
  int driver(NetId id) const { return drivers_[id]; }
  const std::vector<int>& fanout(NetId id) const { return fanout_[id]; }

  const Instance& instance(std::size_t i) const { return netlist_.instances[i]; }
  NetId instance_output(std::size_t i) const { return inst_out_[i]; }
  const std::vector<NetId>& instance_inputs(std::size_t i) const { return inst_in_[i]; }

  /// Gate instance indices in evaluation order.
  const std::vector<std::size_t>& gate_order() const noexcept { return gate_order_; }
  /// Flip-flop instance indices in declaration order.
  const std::vector<std::size_t>& flip_flops() const noexcept { return ffs_; }
  const std::vector<NetId>& input_nets() const noexcept { return in_nets_; }
  const std::vector<NetId>& output_nets() const noexcept { return out_nets_; }

 private:
  NetId intern(const std::string& name);

  Netlist netlist_;
  std::vector<std::string> net_names_;
  std::unordered_map<std::string, NetId> net_ids_;
  std::vector<int> drivers_;
  std::vector<std::vector<int>> fanout_;
  std::vector<NetId> inst_out_;
  std::vector<std::vector<NetId>> inst_in_;
  std::vector<std::size_t> gate_order_;
  std::vector<std::size_t> ffs_;
  std::vector<NetId> in_nets_;
  std::vector<NetId> out_nets_;
};

/// Parses the line-based .snl format and validates it.
Netlist parse_netlist(std::string_view text);
/// Canonical text form; parse_netlist(serialize_netlist(n)) == n.
std::string serialize_netlist(const Netlist& n);
/// Checks every structural invariant; throws on the first violation.
void validate_netlist(const Netlist& n);

}  // namespace scanforge
