// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "scanforge/logic.hpp"

namespace scanforge::sw {

using NodeIndex = std::uint32_t;

enum class MosType : std::uint8_t { N, P };
enum class NodeRole : std::uint8_t { Internal, Vdd, Gnd, Input, Output };

struct Node {
  std::string name;
  NodeRole role = NodeRole::Internal;
  bool storage = false;
  /// Inputs with a drive width behave like a driver of that width; without one
  /// they are ideal (supply-strength) sources.
  std::optional<double> drive_width;
};

struct Transistor {
  std::string id;
  MosType type = MosType::N;
  NodeIndex gate = 0;
  NodeIndex source = 0;
  NodeIndex drain = 0;
  double width = 1;
};

/// Ordered strength ranks. Driven strengths lie strictly between charged and
/// supply and grow with (effective) transistor width.
namespace strength {
inline constexpr double kFloating = 0;
inline constexpr double kCharged = 1;
inline constexpr double kDrivenBase = 2;
inline constexpr double kSupply = 3;
}  // namespace strength

/// PMOS passing 0 and NMOS passing 1 conduct at this fraction of their width.
inline constexpr double kDegradedWidthFactor = 0.5;

struct NodeValue {
  Logic logic = Logic::X;
  double strength = strength::kFloating;
  bool operator==(const NodeValue&) const = default;
};

class TransistorNetwork {
 public:
  NodeIndex add_node(std::string name, NodeRole role = NodeRole::Internal, bool storage = false,
                     std::optional<double> drive_width = std::nullopt);
  void add_transistor(Transistor t);

  const std::vector<Node>& nodes() const noexcept { return nodes_; }
  const std::vector<Transistor>& transistors() const noexcept { return transistors_; }
  std::optional<NodeIndex> find(std::string_view name) const;
  NodeIndex node(std::string_view name) const;  // throws DanglingNode
  std::vector<NodeIndex> inputs() const;
  std::vector<NodeIndex> outputs() const;
  /// Incident transistor indices per node (channel terminals only).
  const std::vector<std::vector<std::size_t>>& channel_incidence() const noexcept { return incidence_; }

  /// Rank of a driver whose effective width is `w`.
  double driven_rank(double w) const;
  double max_width() const noexcept { return max_width_; }

  /// Checks supplies, connectivity and per-transistor rules.
  void validate() const;

 private:
  std::vector<Node> nodes_;
  std::vector<Transistor> transistors_;
  std::unordered_map<std::string, NodeIndex> index_;
  std::vector<std::vector<std::size_t>> incidence_;
  double max_width_ = 0;
};

/// Parses the .tnl format:
///   node <name> [storage] | supply VDD|GND | t <id> <N|P> <gate> <src> <drn> <width>
///   | io <in|out> <name> [drive_width]
TransistorNetwork load_network(std::string_view text);

using NodeState = std::vector<NodeValue>;

/// All nodes X at floating strength, storage nodes charged X.
NodeState initial_state(const TransistorNetwork& net);

/// Zero-delay fixed point. `previous` supplies the charge held on storage nodes
/// and the starting guess; throws Error(Oscillation) naming the nodes still
/// changing after `max_iters` rounds.
NodeState settle(const TransistorNetwork& net, std::span<const std::pair<NodeIndex, Logic>> inputs,
                 const NodeState& previous, int max_iters = 100);

/// Convenience overload keyed by node name, starting from initial_state.
std::map<std::string, NodeValue> settle(const TransistorNetwork& net,
                                        const std::map<std::string, Logic>& inputs,
                                        int max_iters = 100);

/// One clock phase of a flip-flop stimulus.
struct Phase {
  Logic clk = Logic::Zero;
  Logic di = Logic::X;
  Logic si = Logic::X;
  Logic se = Logic::X;
};

/// Settles each phase in turn from an all-X state and returns the value of the
/// `q_node` (default: the first output) after every phase.
std::vector<Logic> run_clocked(const TransistorNetwork& net, std::span<const Phase> stimulus,
                               std::string_view q_node = {});

}  // namespace scanforge::sw
