// SPDX-License-Identifier: Apache-2.0
#include "scanforge/netlist.hpp"

#include <algorithm>
#include <cctype>
#include <queue>
#include <sstream>
#include <unordered_set>

#include "scanforge/error.hpp"

namespace scanforge {

std::string_view to_string(GateType t) {
  switch (t) {
    case GateType::Inv: return "INV";
    case GateType::Buf: return "BUF";
    case GateType::Nand2: return "NAND2";
    case GateType::Nor2: return "NOR2";
    case GateType::And2: return "AND2";
    case GateType::Or2: return "OR2";
    case GateType::Xor2: return "XOR2";
  }
  return "?";
}

std::string_view to_string(FFVariant v) {
  switch (v) {
    case FFVariant::Mux: return "MUX";
    case FFVariant::Gdi: return "GDI";
    case FFVariant::Approx: return "APPROX";
  }
  return "?";
}

std::optional<GateType> parse_gate_type(std::string_view s) {
  for (GateType t : kAllGateTypes)
    if (to_string(t) == s) return t;
  return std::nullopt;
}

std::optional<FFVariant> parse_variant(std::string_view s) {
  std::string upper(s);
  std::transform(upper.begin(), upper.end(), upper.begin(),
                 [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  for (FFVariant v : kAllVariants)
    if (to_string(v) == upper) return v;
  return std::nullopt;
}

int gate_arity(GateType t) { return (t == GateType::Inv || t == GateType::Buf) ? 1 : 2; }

Logic eval_gate(GateType t, Logic a, Logic b) {
  switch (t) {
    case GateType::Inv: return logic_not(a);
    case GateType::Buf: return a;
    case GateType::Nand2: return logic_not(logic_and(a, b));
    case GateType::Nor2: return logic_not(logic_or(a, b));
    case GateType::And2: return logic_and(a, b);
    case GateType::Or2: return logic_or(a, b);
    case GateType::Xor2: return logic_xor(a, b);
  }
  return Logic::X;
}

// ---------------------------------------------------------------------------
// NetlistIndex

NetId NetlistIndex::intern(const std::string& name) {
  auto [it, inserted] = net_ids_.try_emplace(name, static_cast<NetId>(net_names_.size()));
  if (inserted) {
    net_names_.push_back(name);
    drivers_.push_back(-2);  // -2: undriven so far
    fanout_.emplace_back();
  }
  return it->second;
}

NetlistIndex::NetlistIndex(Netlist netlist) : netlist_(std::move(netlist)) {
  const auto& insts = netlist_.instances;

  std::unordered_set<std::string> ids;
  for (const auto& inst : insts) {
    if (!ids.insert(inst.id).second)
      throw Error(ErrorCode::DuplicateInstance, "duplicate instance id '" + inst.id + "'", {},
                  {inst.id});
  }

  for (const auto& in : netlist_.inputs) {
    NetId id = intern(in);
    if (drivers_[id] != -2)
      throw Error(ErrorCode::MultiplyDrivenNet, "input '" + in + "' declared twice", {}, {in});
    drivers_[id] = kPrimaryInputDriver;
    in_nets_.push_back(id);
  }

  inst_out_.resize(insts.size());
  inst_in_.resize(insts.size());
  for (std::size_t i = 0; i < insts.size(); ++i) {
    const auto& inst = insts[i];
    NetId out = intern(inst.output);
    if (drivers_[out] != -2) {
      std::string other = drivers_[out] == kPrimaryInputDriver
                              ? std::string("primary input")
                              : "instance '" + insts[static_cast<std::size_t>(drivers_[out])].id + "'";
      throw Error(ErrorCode::MultiplyDrivenNet,
                  "net '" + inst.output + "' driven by '" + inst.id + "' and " + other, {},
                  {inst.output});
    }
    drivers_[out] = static_cast<int>(i);
    inst_out_[i] = out;
    if (inst.is_flip_flop()) ffs_.push_back(i);
  }
  for (std::size_t i = 0; i < insts.size(); ++i) {
    for (const auto& in : insts[i].inputs) {
      NetId id = intern(in);
      inst_in_[i].push_back(id);
      fanout_[id].push_back(static_cast<int>(i));
    }
  }
  for (const auto& out : netlist_.outputs) out_nets_.push_back(intern(out));

  for (NetId id = 0; id < net_names_.size(); ++id) {
    if (drivers_[id] == -2)
      throw Error(ErrorCode::UndeclaredNet,
                  "net '" + net_names_[id] + "' is neither an input nor driven by an instance", {},
                  {net_names_[id]});
  }

  // Kahn's algorithm over gates only; flip-flop outputs and primary inputs are sources.
  std::vector<int> pending(insts.size(), 0);
  std::queue<std::size_t> ready;
  for (std::size_t i = 0; i < insts.size(); ++i) {
    if (insts[i].kind != InstanceKind::Gate) continue;
    for (NetId in : inst_in_[i]) {
      int d = drivers_[in];
      if (d >= 0 && insts[static_cast<std::size_t>(d)].kind == InstanceKind::Gate) ++pending[i];
    }
    if (pending[i] == 0) ready.push(i);
  }
  while (!ready.empty()) {
    std::size_t g = ready.front();
    ready.pop();
    gate_order_.push_back(g);
    for (int f : fanout_[inst_out_[g]]) {
      auto fi = static_cast<std::size_t>(f);
      if (insts[fi].kind != InstanceKind::Gate) continue;
      // a gate may read the same net on both pins
      if (--pending[fi] == 0) ready.push(fi);
    }
  }
  std::size_t gate_count = insts.size() - ffs_.size();
  if (gate_order_.size() != gate_count) {
    std::vector<std::string> stuck;
    for (std::size_t i = 0; i < insts.size(); ++i)
      if (insts[i].kind == InstanceKind::Gate && pending[i] > 0) stuck.push_back(insts[i].id);
    throw Error(ErrorCode::CombinationalCycle,
                "combinational cycle through " + std::to_string(stuck.size()) + " gate(s)", {},
                stuck);
  }
}

std::optional<NetId> NetlistIndex::find_net(std::string_view name) const {
  auto it = net_ids_.find(std::string(name));
  if (it == net_ids_.end()) return std::nullopt;
  return it->second;
}

NetId NetlistIndex::net(std::string_view name) const {
  if (auto id = find_net(name)) return *id;
  throw Error(ErrorCode::UndeclaredNet, "unknown net '" + std::string(name) + "'", {},
              {std::string(name)});
}

void validate_netlist(const Netlist& n) { NetlistIndex{n}; }

// ---------------------------------------------------------------------------
// Text format

namespace {

struct Token {
  std::string_view text;
  std::size_t column;
};

std::vector<Token> tokenize(std::string_view line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    if (line[i] == '#') break;
    if (std::isspace(static_cast<unsigned char>(line[i]))) {
      ++i;
      continue;
    }
    std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i])) && line[i] != '#')
      ++i;
    out.push_back({line.substr(start, i - start), start + 1});
  }
  return out;
}

bool is_identifier(std::string_view s) {
  if (s.empty()) return false;
  auto c0 = static_cast<unsigned char>(s[0]);
  if (!(std::isalpha(c0) || c0 == '_')) return false;
  return std::all_of(s.begin() + 1, s.end(), [](char ch) {
    auto c = static_cast<unsigned char>(ch);
    return std::isalnum(c) || c == '_' || c == '.' || c == '[' || c == ']' || c == '$';
  });
}

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Netlist run() {
    std::size_t pos = 0;
    while (pos <= text_.size()) {
      std::size_t eol = text_.find('\n', pos);
      if (eol == std::string_view::npos) eol = text_.size();
      std::string_view line = text_.substr(pos, eol - pos);
      if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
      ++line_no_;
      handle(tokenize(line));
      pos = eol + 1;
    }
    if (!seen_module_) fail({1, 1}, "missing 'module' header");
    if (!ended_) fail({line_no_, 1}, "missing 'endmodule'");
    if (net_named_clock_) fail(*net_named_clock_, "'CLK' is the implicit clock and cannot be used as a net");
    validate_netlist(n_);
    return std::move(n_);
  }

 private:
  [[noreturn]] void fail(SourceLocation at, const std::string& msg) {
    throw Error(ErrorCode::NetlistSyntax, msg, at);
  }

  std::string net_token(const Token& t) {
    if (!is_identifier(t.text))
      fail({line_no_, t.column}, "invalid net name '" + std::string(t.text) + "'");
    if (t.text == kClockNet && !net_named_clock_) net_named_clock_ = SourceLocation{line_no_, t.column};
    return std::string(t.text);
  }

  void expect_count(const std::vector<Token>& toks, std::size_t n, std::string_view what) {
    if (toks.size() != n) {
      std::size_t col = toks.size() > n ? toks[n].column : toks.back().column;
      fail({line_no_, col}, std::string(what) + " expects " + std::to_string(n - 1) + " operand(s)");
    }
  }

  void handle(const std::vector<Token>& toks) {
    if (toks.empty()) return;
    const Token& kw = toks[0];
    SourceLocation at{line_no_, kw.column};
    if (ended_) fail(at, "content after 'endmodule'");
    if (!seen_module_) {
      if (kw.text != "module") fail(at, "expected 'module'");
      expect_count(toks, 2, "module");
      if (!is_identifier(toks[1].text)) fail({line_no_, toks[1].column}, "invalid module name");
      n_.name = std::string(toks[1].text);
      seen_module_ = true;
      return;
    }
    if (kw.text == "input" || kw.text == "output") {
      if (toks.size() < 2) fail(at, std::string(kw.text) + " needs at least one net");
      auto& list = kw.text == "input" ? n_.inputs : n_.outputs;
      for (std::size_t i = 1; i < toks.size(); ++i) {
        std::string net = net_token(toks[i]);
        if (kw.text == "output" && std::find(list.begin(), list.end(), net) != list.end())
          fail({line_no_, toks[i].column}, "output '" + net + "' declared twice");
        list.push_back(std::move(net));
      }
    } else if (kw.text == "gate") {
      if (toks.size() < 3) fail(at, "gate line is 'gate <id> <TYPE> <out> <in>...'");
      auto type = parse_gate_type(toks[2].text);
      if (!type) fail({line_no_, toks[2].column}, "unknown gate type '" + std::string(toks[2].text) + "'");
      expect_count(toks, 4 + static_cast<std::size_t>(gate_arity(*type)), to_string(*type));
      Instance inst{instance_id(toks[1]), InstanceKind::Gate, *type, FFVariant::Mux,
                    net_token(toks[3]), {}};
      for (std::size_t i = 4; i < toks.size(); ++i) inst.inputs.push_back(net_token(toks[i]));
      n_.instances.push_back(std::move(inst));
    } else if (kw.text == "dff") {
      expect_count(toks, 4, "dff");
      n_.instances.push_back({instance_id(toks[1]), InstanceKind::Dff, GateType::Buf,
                              FFVariant::Mux, net_token(toks[2]), {net_token(toks[3])}});
    } else if (kw.text == "scanff") {
      expect_count(toks, 7, "scanff");
      auto variant = parse_variant(toks[2].text);
      if (!variant || toks[2].text != to_string(*variant))
        fail({line_no_, toks[2].column}, "scanff variant must be MUX, GDI or APPROX");
      n_.instances.push_back({instance_id(toks[1]), InstanceKind::ScanFF, GateType::Buf, *variant,
                              net_token(toks[3]),
                              {net_token(toks[4]), net_token(toks[5]), net_token(toks[6])}});
    } else if (kw.text == "endmodule") {
      expect_count(toks, 1, "endmodule");
      ended_ = true;
    } else if (kw.text == "module") {
      fail(at, "nested or repeated 'module'");
    } else {
      fail(at, "unknown keyword '" + std::string(kw.text) + "'");
    }
  }

  std::string instance_id(const Token& t) {
    if (!is_identifier(t.text))
      fail({line_no_, t.column}, "invalid instance id '" + std::string(t.text) + "'");
    return std::string(t.text);
  }

  std::string_view text_;
  std::size_t line_no_ = 0;
  bool seen_module_ = false;
  bool ended_ = false;
  std::optional<SourceLocation> net_named_clock_;
  Netlist n_;
};

}  // namespace

Netlist parse_netlist(std::string_view text) { return Parser(text).run(); }

std::string serialize_netlist(const Netlist& n) {
  std::ostringstream os;
  os << "module " << n.name << '\n';
  auto port_line = [&os](std::string_view kw, const std::vector<std::string>& nets) {
    if (nets.empty()) return;
    os << kw;
    for (const auto& net : nets) os << ' ' << net;
    os << '\n';
  };
  port_line("input", n.inputs);
  port_line("output", n.outputs);
  for (const auto& inst : n.instances) {
    switch (inst.kind) {
      case InstanceKind::Gate: os << "gate " << inst.id << ' ' << to_string(inst.gate); break;
      case InstanceKind::Dff: os << "dff " << inst.id; break;
      case InstanceKind::ScanFF: os << "scanff " << inst.id << ' ' << to_string(inst.variant); break;
    }
    os << ' ' << inst.output;
    for (const auto& in : inst.inputs) os << ' ' << in;
    os << '\n';
  }
  os << "endmodule\n";
  return os.str();
}

}  // namespace scanforge
