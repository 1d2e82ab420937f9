// SPDX-License-Identifier: Apache-2.0
#include "scanforge/switch_sim.hpp"

#include <algorithm>
#include <cctype>
#include <queue>
#include <sstream>

#include "scanforge/error.hpp"

namespace scanforge::sw {

NodeIndex TransistorNetwork::add_node(std::string name, NodeRole role, bool storage,
                                      std::optional<double> drive_width) {
  auto [it, inserted] = index_.try_emplace(name, static_cast<NodeIndex>(nodes_.size()));
  if (!inserted)
    throw Error(ErrorCode::NetworkSyntax, "node '" + name + "' declared twice", {}, {name});
  if (drive_width) {
    if (!(*drive_width > 0))
      throw Error(ErrorCode::NetworkSyntax, "drive width of '" + name + "' must be positive");
    max_width_ = std::max(max_width_, *drive_width);
  }
  nodes_.push_back({std::move(name), role, storage, drive_width});
  incidence_.emplace_back();
  return it->second;
}

void TransistorNetwork::add_transistor(Transistor t) {
  if (!(t.width > 0))
    throw Error(ErrorCode::NetworkSyntax, "transistor '" + t.id + "' needs a positive width");
  if (t.gate >= nodes_.size() || t.source >= nodes_.size() || t.drain >= nodes_.size())
    throw Error(ErrorCode::DanglingNode, "transistor '" + t.id + "' references an unknown node");
  if (t.gate == t.source || t.gate == t.drain)
    throw Error(ErrorCode::NetworkSyntax,
                "transistor '" + t.id + "' has its gate tied to its own channel", {}, {t.id});
  max_width_ = std::max(max_width_, t.width);
  incidence_[t.source].push_back(transistors_.size());
  if (t.drain != t.source) incidence_[t.drain].push_back(transistors_.size());
  transistors_.push_back(std::move(t));
}

std::optional<NodeIndex> TransistorNetwork::find(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

NodeIndex TransistorNetwork::node(std::string_view name) const {
  if (auto n = find(name)) return *n;
  throw Error(ErrorCode::DanglingNode, "unknown node '" + std::string(name) + "'", {},
              {std::string(name)});
}

std::vector<NodeIndex> TransistorNetwork::inputs() const {
  std::vector<NodeIndex> out;
  for (NodeIndex i = 0; i < nodes_.size(); ++i)
    if (nodes_[i].role == NodeRole::Input) out.push_back(i);
  return out;
}

std::vector<NodeIndex> TransistorNetwork::outputs() const {
  std::vector<NodeIndex> out;
  for (NodeIndex i = 0; i < nodes_.size(); ++i)
    if (nodes_[i].role == NodeRole::Output) out.push_back(i);
  return out;
}

double TransistorNetwork::driven_rank(double w) const {
  double wmax = max_width_ > 0 ? max_width_ : 1.0;
  return strength::kDrivenBase + 0.5 * std::min(w, wmax) / wmax;
}

void TransistorNetwork::validate() const {
  bool vdd = false, gnd = false;
  for (const auto& n : nodes_) {
    vdd |= n.role == NodeRole::Vdd;
    gnd |= n.role == NodeRole::Gnd;
  }
  if (!vdd || !gnd) throw Error(ErrorCode::MissingSupply, "network needs both VDD and GND supplies");

  std::vector<char> used(nodes_.size(), 0);
  for (const auto& t : transistors_) used[t.gate] = used[t.source] = used[t.drain] = 1;
  for (NodeIndex i = 0; i < nodes_.size(); ++i) {
    if (!used[i] && nodes_[i].role != NodeRole::Vdd && nodes_[i].role != NodeRole::Gnd)
      throw Error(ErrorCode::DanglingNode, "node '" + nodes_[i].name + "' is not connected", {},
                  {nodes_[i].name});
  }
}

// ---------------------------------------------------------------------------

namespace {

[[noreturn]] void syntax(std::size_t line, std::size_t col, const std::string& msg) {
  throw Error(ErrorCode::NetworkSyntax, msg, SourceLocation{line, col});
}

struct Tok {
  std::string text;
  std::size_t col;
};

std::vector<Tok> split(std::string_view line) {
  std::vector<Tok> out;
  std::size_t i = 0;
  while (i < line.size() && line[i] != '#') {
    if (std::isspace(static_cast<unsigned char>(line[i]))) {
      ++i;
      continue;
    }
    std::size_t start = i;
    while (i < line.size() && line[i] != '#' && !std::isspace(static_cast<unsigned char>(line[i])))
      ++i;
    out.push_back({std::string(line.substr(start, i - start)), start + 1});
  }
  return out;
}

double parse_width(const Tok& t, std::size_t line) {
  try {
    std::size_t used = 0;
    double w = std::stod(t.text, &used);
    if (used == t.text.size() && w > 0) return w;
  } catch (const std::exception&) {
  }
  syntax(line, t.col, "width '" + t.text + "' must be a positive number");
}

}  // namespace

TransistorNetwork load_network(std::string_view text) {
  TransistorNetwork net;
  struct PendingT {
    std::vector<Tok> toks;
    std::size_t line;
  };
  std::vector<PendingT> pending;

  std::size_t pos = 0, line_no = 0;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    auto toks = split(text.substr(pos, eol - pos));
    pos = eol + 1;
    ++line_no;
    if (toks.empty()) continue;
    const std::string& kw = toks[0].text;
    if (kw == "node") {
      bool storage = false;
      if (toks.size() == 3 && toks[2].text == "storage") storage = true;
      else if (toks.size() != 2) syntax(line_no, toks[0].col, "expected 'node <name> [storage]'");
      if (toks[1].text == "VDD" || toks[1].text == "GND")
        syntax(line_no, toks[1].col, "supplies are declared with 'supply'");
      net.add_node(toks[1].text, NodeRole::Internal, storage);
    } else if (kw == "supply") {
      if (toks.size() != 2 || (toks[1].text != "VDD" && toks[1].text != "GND"))
        syntax(line_no, toks[0].col, "expected 'supply VDD' or 'supply GND'");
      net.add_node(toks[1].text, toks[1].text == "VDD" ? NodeRole::Vdd : NodeRole::Gnd);
    } else if (kw == "io") {
      if (toks.size() < 3 || toks.size() > 4 || (toks[1].text != "in" && toks[1].text != "out"))
        syntax(line_no, toks[0].col, "expected 'io <in|out> <name> [drive_width]'");
      bool is_in = toks[1].text == "in";
      if (toks.size() == 4 && !is_in) syntax(line_no, toks[3].col, "only inputs take a drive width");
      if (toks[2].text == "VDD" || toks[2].text == "GND")
        syntax(line_no, toks[2].col, "supplies cannot be io nodes");
      std::optional<double> drive;
      if (toks.size() == 4) drive = parse_width(toks[3], line_no);
      auto existing = net.find(toks[2].text);
      if (existing) syntax(line_no, toks[2].col, "io node '" + toks[2].text + "' already declared");
      net.add_node(toks[2].text, is_in ? NodeRole::Input : NodeRole::Output,
                   /*storage=*/false, drive);
    } else if (kw == "t") {
      if (toks.size() != 7) syntax(line_no, toks[0].col, "expected 't <id> <N|P> <gate> <src> <drn> <width>'");
      if (toks[2].text != "N" && toks[2].text != "P")
        syntax(line_no, toks[2].col, "transistor type must be N or P");
      parse_width(toks[6], line_no);
      pending.push_back({std::move(toks), line_no});
    } else {
      syntax(line_no, toks[0].col, "unknown keyword '" + kw + "'");
    }
  }

  // Transistors may reference nodes declared later in the file.
  for (auto& [toks, line] : pending) {
    auto lookup = [&](const Tok& t) {
      auto n = net.find(t.text);
      if (!n)
        throw Error(ErrorCode::DanglingNode, "undeclared node '" + t.text + "'",
                    SourceLocation{line, t.col}, {t.text});
      return *n;
    };
    net.add_transistor({toks[1].text, toks[2].text == "N" ? MosType::N : MosType::P,
                        lookup(toks[3]), lookup(toks[4]), lookup(toks[5]),
                        parse_width(toks[6], line)});
  }
  net.validate();
  return net;
}

// ---------------------------------------------------------------------------

namespace {

enum class Conduction : std::uint8_t { Off, On, Maybe };

Conduction conduction(MosType type, Logic gate) {
  if (gate == Logic::X) return Conduction::Maybe;
  bool on = type == MosType::N ? gate == Logic::One : gate == Logic::Zero;
  return on ? Conduction::On : Conduction::Off;
}

double channel_rank(const TransistorNetwork& net, const Transistor& t, Logic passed) {
  bool degraded = (t.type == MosType::P && passed == Logic::Zero) ||
                  (t.type == MosType::N && passed == Logic::One);
  return net.driven_rank(degraded ? t.width * kDegradedWidthFactor : t.width);
}

struct Contribution {
  double strength;
  NodeIndex node;
  Logic value;
  bool operator<(const Contribution& o) const { return strength < o.strength; }
};

/// One resolution pass with conduction frozen. Strength levels are processed
/// from strongest to weakest; a node settled at some level blocks every weaker
/// signal, and signals of equal strength merge (disagreement -> X).
NodeState resolve(const TransistorNetwork& net, const std::vector<Conduction>& cond,
                  const std::vector<Logic>& source_values, const NodeState& charges) {
  const auto& nodes = net.nodes();
  const auto& trans = net.transistors();
  const auto& incidence = net.channel_incidence();
  const std::size_t n = nodes.size();

  std::vector<double> best(n, -1.0);
  std::vector<Logic> value(n, Logic::X);
  std::vector<char> done(n, 0);
  std::priority_queue<Contribution> heap;

  for (NodeIndex i = 0; i < n; ++i) {
    const Node& node = nodes[i];
    switch (node.role) {
      case NodeRole::Vdd: heap.push({strength::kSupply, i, Logic::One}); break;
      case NodeRole::Gnd: heap.push({strength::kSupply, i, Logic::Zero}); break;
      case NodeRole::Input: {
        double s = node.drive_width ? net.driven_rank(*node.drive_width) : strength::kSupply;
        heap.push({s, i, source_values[i]});
        break;
      }
      default:
        if (node.storage) heap.push({strength::kCharged, i, charges[i].logic});
        else heap.push({strength::kFloating, i, Logic::X});
    }
  }

  std::vector<NodeIndex> level;
  std::vector<NodeIndex> work;
  auto absorb = [&](NodeIndex node, double s, Logic v) {
    if (best[node] < s) {
      best[node] = s;
      value[node] = v;
      level.push_back(node);
      work.push_back(node);
    } else {
      Logic merged = logic_merge(value[node], v);
      if (merged != value[node]) {
        value[node] = merged;
        work.push_back(node);
      }
    }
  };
  auto passed = [&](std::size_t ti, NodeIndex from) {
    return cond[ti] == Conduction::Maybe ? Logic::X : value[from];
  };
  auto other_end = [&](const Transistor& t, NodeIndex from) {
    return t.source == from ? t.drain : t.source;
  };

  while (!heap.empty()) {
    const double s = heap.top().strength;
    level.clear();
    while (!heap.empty() && heap.top().strength == s) {
      Contribution c = heap.top();
      heap.pop();
      if (!done[c.node]) absorb(c.node, s, c.value);
    }
    // Spread within this strength level until values stop changing.
    while (!work.empty()) {
      NodeIndex from = work.back();
      work.pop_back();
      for (std::size_t ti : incidence[from]) {
        if (cond[ti] == Conduction::Off) continue;
        const Transistor& t = trans[ti];
        NodeIndex to = other_end(t, from);
        if (done[to]) continue;
        Logic v = passed(ti, from);
        if (channel_rank(net, t, v) >= s) absorb(to, s, v);
      }
    }
    for (NodeIndex node : level) done[node] = 1;
    // Weaker signals leave the level only once its values are final.
    for (NodeIndex from : level) {
      for (std::size_t ti : incidence[from]) {
        if (cond[ti] == Conduction::Off) continue;
        const Transistor& t = trans[ti];
        NodeIndex to = other_end(t, from);
        if (done[to]) continue;
        Logic v = passed(ti, from);
        double r = channel_rank(net, t, v);
        if (r < s) heap.push({r, to, v});
      }
    }
  }

  NodeState out(n);
  for (NodeIndex i = 0; i < n; ++i) out[i] = {value[i], best[i]};
  return out;
}

}  // namespace

NodeState initial_state(const TransistorNetwork& net) {
  NodeState st(net.nodes().size());
  for (std::size_t i = 0; i < st.size(); ++i) {
    if (net.nodes()[i].storage) st[i].strength = strength::kCharged;
  }
  return st;
}

NodeState settle(const TransistorNetwork& net, std::span<const std::pair<NodeIndex, Logic>> inputs,
                 const NodeState& previous, int max_iters) {
  const auto& nodes = net.nodes();
  if (previous.size() != nodes.size())
    throw Error(ErrorCode::StimulusMismatch, "previous state does not match the network");
  if (max_iters < 1) throw Error(ErrorCode::StimulusMismatch, "max_iters must be at least 1");

  std::vector<Logic> sources(nodes.size(), Logic::X);
  for (auto [node, v] : inputs) {
    if (node >= nodes.size() || nodes[node].role != NodeRole::Input)
      throw Error(ErrorCode::StimulusMismatch, "stimulus drives a node that is not an input");
    sources[node] = v;
  }

  NodeState current = previous;
  for (NodeIndex i = 0; i < nodes.size(); ++i) {
    if (nodes[i].role == NodeRole::Input) current[i].logic = sources[i];
  }

  std::vector<Conduction> cond(net.transistors().size());
  NodeState before;
  for (int iter = 0; iter < max_iters; ++iter) {
    for (std::size_t ti = 0; ti < cond.size(); ++ti) {
      const Transistor& t = net.transistors()[ti];
      cond[ti] = conduction(t.type, current[t.gate].logic);
    }
    NodeState next = resolve(net, cond, sources, previous);
    if (next == current) return next;
    before = std::move(current);
    current = std::move(next);
  }

  std::vector<std::string> changing;
  for (NodeIndex i = 0; i < nodes.size(); ++i) {
    if (before[i].logic != current[i].logic) changing.push_back(nodes[i].name);
  }
  std::string list;
  for (const auto& name : changing) list += (list.empty() ? "" : ", ") + name;
  throw Error(ErrorCode::Oscillation,
              "no fixed point after " + std::to_string(max_iters) + " iterations; oscillating: " + list,
              {}, changing);
}

std::map<std::string, NodeValue> settle(const TransistorNetwork& net,
                                        const std::map<std::string, Logic>& inputs,
                                        int max_iters) {
  std::vector<std::pair<NodeIndex, Logic>> assign;
  for (const auto& [name, v] : inputs) assign.emplace_back(net.node(name), v);
  NodeState st = settle(net, assign, initial_state(net), max_iters);
  std::map<std::string, NodeValue> out;
  for (NodeIndex i = 0; i < st.size(); ++i) out[net.nodes()[i].name] = st[i];
  return out;
}

std::vector<Logic> run_clocked(const TransistorNetwork& net, std::span<const Phase> stimulus,
                               std::string_view q_node) {
  NodeIndex q;
  if (q_node.empty()) {
    auto outs = net.outputs();
    if (outs.empty()) throw Error(ErrorCode::DanglingNode, "network has no output node");
    q = outs.front();
  } else {
    q = net.node(q_node);
  }

  std::vector<std::pair<NodeIndex, Logic>> assign;
  auto bind = [&](std::string_view name) -> std::optional<std::size_t> {
    auto n = net.find(name);
    if (!n || net.nodes()[*n].role != NodeRole::Input) return std::nullopt;
    assign.emplace_back(*n, Logic::X);
    return assign.size() - 1;
  };
  auto clk = bind("CLK");
  auto di = bind("DI");
  auto si = bind("SI");
  auto se = bind("SE");
  if (!clk) throw Error(ErrorCode::DanglingNode, "network has no CLK input");

  NodeState state = initial_state(net);
  std::vector<Logic> wave;
  wave.reserve(stimulus.size());
  for (const Phase& ph : stimulus) {
    assign[*clk].second = ph.clk;
    if (di) assign[*di].second = ph.di;
    if (si) assign[*si].second = ph.si;
    if (se) assign[*se].second = ph.se;
    state = settle(net, assign, state);
    wave.push_back(state[q].logic);
  }
  return wave;
}

}  // namespace scanforge::sw
