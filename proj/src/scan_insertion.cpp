// SPDX-License-Identifier: Apache-2.0
#include "scanforge/scan_insertion.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <unordered_map>

#include "scanforge/error.hpp"

namespace scanforge {

namespace {

std::set<std::string> all_nets(const Netlist& n) {
  std::set<std::string> nets(n.inputs.begin(), n.inputs.end());
  nets.insert(n.outputs.begin(), n.outputs.end());
  for (const auto& inst : n.instances) {
    nets.insert(inst.output);
    nets.insert(inst.inputs.begin(), inst.inputs.end());
  }
  return nets;
}

}  // namespace

bool has_scan_chain(const Netlist& n) {
  return std::any_of(n.instances.begin(), n.instances.end(),
                     [](const Instance& i) { return i.kind == InstanceKind::ScanFF; });
}

ScanChainPlan declaration_order_plan(const Netlist& n, FFVariant variant) {
  ScanChainPlan plan;
  plan.variant = variant;
  for (const auto& inst : n.instances)
    if (inst.kind == InstanceKind::Dff) plan.order.push_back(inst.id);
  return plan;
}

Netlist insert_scan(const Netlist& n, const ScanChainPlan& plan) {
  if (has_scan_chain(n))
    throw Error(ErrorCode::AlreadyInserted, "netlist '" + n.name + "' already contains scan flip-flops");

  std::map<std::string, std::size_t> dff_index;
  for (std::size_t i = 0; i < n.instances.size(); ++i)
    if (n.instances[i].kind == InstanceKind::Dff) dff_index[n.instances[i].id] = i;
  if (dff_index.empty()) throw Error(ErrorCode::NoFlipFlops, "netlist has no flip-flops to scan");

  std::set<std::string> seen;
  for (const auto& id : plan.order) {
    if (!dff_index.count(id))
      throw Error(ErrorCode::PlanMismatch, "plan names '" + id + "', which is not a dff", {}, {id});
    if (!seen.insert(id).second)
      throw Error(ErrorCode::PlanMismatch, "plan lists '" + id + "' twice", {}, {id});
  }
  if (seen.size() != dff_index.size())
    throw Error(ErrorCode::PlanMismatch, "plan covers " + std::to_string(seen.size()) + " of " +
                                             std::to_string(dff_index.size()) + " flip-flops");

  const std::set<std::string> reserved{plan.scan_in, plan.scan_out, plan.scan_enable};
  if (reserved.size() != 3 || reserved.count(std::string(kClockNet)))
    throw Error(ErrorCode::NameCollision, "scan port names must be distinct and not CLK");
  for (const auto& net : all_nets(n)) {
    if (reserved.count(net))
      throw Error(ErrorCode::NameCollision, "net '" + net + "' collides with a scan port name", {},
                  {net});
  }

  Netlist out = n;
  const std::string last_q = n.instances[dff_index.at(plan.order.back())].output;
  std::string prev = plan.scan_in;
  for (const auto& id : plan.order) {
    Instance& inst = out.instances[dff_index.at(id)];
    inst.kind = InstanceKind::ScanFF;
    inst.variant = plan.variant;
    std::string di = inst.inputs.at(0);
    inst.inputs = {di, prev, plan.scan_enable};
    prev = inst.output;
  }

  // The last Q net is renamed to the scan-out port everywhere it appears.
  auto rename = [&](std::string& net) {
    if (net == last_q) net = plan.scan_out;
  };
  for (auto& inst : out.instances) {
    rename(inst.output);
    for (auto& in : inst.inputs) rename(in);
  }
  bool last_q_was_output = false;
  for (auto& o : out.outputs) {
    if (o == last_q) last_q_was_output = true;
    rename(o);
  }
  out.inputs.push_back(plan.scan_in);
  out.inputs.push_back(plan.scan_enable);
  if (!last_q_was_output) out.outputs.push_back(plan.scan_out);
  validate_netlist(out);
  return out;
}

ScanChainPlan verify_chain(const Netlist& n) {
  std::vector<const Instance*> sffs;
  for (const auto& inst : n.instances) {
    if (inst.kind == InstanceKind::ScanFF) sffs.push_back(&inst);
  }
  if (sffs.empty()) throw Error(ErrorCode::NoFlipFlops, "netlist has no scan flip-flops");
  if (std::any_of(n.instances.begin(), n.instances.end(),
                  [](const Instance& i) { return i.kind == InstanceKind::Dff; }))
    throw Error(ErrorCode::BrokenChain, "netlist mixes plain dffs with scan flip-flops");

  const FFVariant variant = sffs.front()->variant;
  const std::string& se = sffs.front()->inputs[kScanPinSE];
  for (const Instance* f : sffs) {
    if (f->variant != variant)
      throw Error(ErrorCode::MixedVariants, "scan flip-flops use more than one variant", {}, {f->id});
    if (f->inputs[kScanPinSE] != se)
      throw Error(ErrorCode::MultipleChains, "scan flip-flops use different enable nets", {}, {f->id});
  }

  std::unordered_map<std::string, const Instance*> by_q;
  for (const Instance* f : sffs) by_q[f->output] = f;
  const std::set<std::string> inputs(n.inputs.begin(), n.inputs.end());
  const std::set<std::string> outputs(n.outputs.begin(), n.outputs.end());

  std::unordered_map<std::string, const Instance*> successor;  // Q net -> flip-flop reading it on SI
  std::vector<const Instance*> heads;
  for (const Instance* f : sffs) {
    const std::string& si = f->inputs[kScanPinSI];
    if (by_q.count(si)) {
      if (!successor.emplace(si, f).second)
        throw Error(ErrorCode::MultipleChains, "net '" + si + "' feeds more than one SI pin", {}, {si});
    } else if (inputs.count(si)) {
      heads.push_back(f);
    } else {
      throw Error(ErrorCode::BrokenChain,
                  "SI of '" + f->id + "' is neither a scan input port nor a scan flip-flop output",
                  {}, {f->id});
    }
  }
  if (heads.size() != 1)
    throw Error(ErrorCode::MultipleChains,
                "expected one chain head, found " + std::to_string(heads.size()));

  ScanChainPlan plan;
  plan.variant = variant;
  plan.scan_in = heads.front()->inputs[kScanPinSI];
  plan.scan_enable = se;
  const Instance* cur = heads.front();
  while (true) {
    plan.order.push_back(cur->id);
    auto it = successor.find(cur->output);
    if (it == successor.end()) break;
    cur = it->second;
    if (plan.order.size() > sffs.size())
      throw Error(ErrorCode::BrokenChain, "scan chain loops back on itself");
  }
  if (plan.order.size() != sffs.size())
    throw Error(ErrorCode::BrokenChain, "scan chain reaches " + std::to_string(plan.order.size()) +
                                            " of " + std::to_string(sffs.size()) + " flip-flops");
  plan.scan_out = cur->output;
  if (!outputs.count(plan.scan_out))
    throw Error(ErrorCode::BrokenChain, "chain end '" + plan.scan_out + "' is not an output port");
  if (!inputs.count(plan.scan_enable))
    throw Error(ErrorCode::BrokenChain, "scan enable '" + plan.scan_enable + "' is not an input port");
  return plan;
}

}  // namespace scanforge
