// SPDX-License-Identifier: Apache-2.0
#include "scanforge/sta.hpp"

#include <algorithm>
#include <limits>

#include "scanforge/error.hpp"

namespace scanforge {

TimingReport analyze_timing(const Netlist& n, FFVariant variant, Stage stage, Mode mode,
                            const CellLibrary& lib, const TimingOptions& options) {
  const NetlistIndex idx(n);  // rejects cyclic graphs
  const FFVariantParams& ff = lib.ff(variant, stage);
  const ModeTiming& row = ff.mode(mode);

  constexpr double kNone = -std::numeric_limits<double>::infinity();
  const std::size_t nets = idx.net_count();
  std::vector<double> arrival(nets, kNone);
  std::vector<int> via(nets, -1);  // gate instance that set the arrival

  for (NetId in : idx.input_nets()) arrival[in] = options.input_arrival_ns;
  for (std::size_t f : idx.flip_flops()) arrival[idx.instance_output(f)] = 0;

  for (std::size_t g : idx.gate_order()) {
    const GateTiming& gt = lib.gates().at(idx.instance(g).gate);
    double best = kNone;
    for (NetId in : idx.instance_inputs(g)) best = std::max(best, arrival[in]);
    if (best == kNone) continue;
    NetId out = idx.instance_output(g);
    arrival[out] = best + gt.delay_ns;
    via[out] = static_cast<int>(g);
  }

  // End points.
  double worst = kNone;
  NetId worst_net = 0;
  std::string capture_point;
  auto consider = [&](NetId net, double extra, const std::string& endpoint) {
    if (arrival[net] == kNone) return;
    double t = arrival[net] + extra;
    if (t > worst) {
      worst = t;
      worst_net = net;
      capture_point = endpoint;
    }
  };
  for (std::size_t f : idx.flip_flops()) {
    const auto& pins = idx.instance_inputs(f);
    const std::string& id = idx.instance(f).id;
    consider(pins[0], 0, id);
    if (mode == Mode::Test && pins.size() > kScanPinSI) consider(pins[kScanPinSI], 0, id);
  }
  for (NetId out : idx.output_nets()) consider(out, options.output_required_ns, idx.net_name(out));

  TimingReport r;
  r.design = n.name;
  r.variant = variant;
  r.stage = stage;
  r.mode = mode;
  r.t_su_ns = row.t_su_ns;
  r.t_cq_ns = row.t_cq_ns;
  r.t_pd_ns = row.t_pd_ns;
  r.t_pd_flagged = row.inconsistent();
  r.t_comb_ns = worst == kNone ? 0 : worst;

  if (worst != kNone) {
    std::vector<std::string> path{capture_point};
    NetId net = worst_net;
    while (via[net] >= 0) {
      auto g = static_cast<std::size_t>(via[net]);
      path.push_back(idx.instance(g).id);
      const GateTiming& gt = lib.gates().at(idx.instance(g).gate);
      // step back along the input that produced the arrival
      for (NetId in : idx.instance_inputs(g)) {
        if (arrival[in] + gt.delay_ns == arrival[net]) {
          net = in;
          break;
        }
      }
    }
    int d = idx.driver(net);
    path.push_back(d >= 0 ? idx.instance(static_cast<std::size_t>(d)).id : idx.net_name(net));
    std::reverse(path.begin(), path.end());
    r.critical_path = std::move(path);
  }

  r.t_clk_min_ns = r.t_cq_ns + r.t_comb_ns + r.t_su_ns;
  r.f_max_hz = 1e9 / r.t_clk_min_ns;
  return r;
}

double time_gain(const TimingReport& reference, const TimingReport& candidate) {
  if (reference.design != candidate.design || reference.stage != candidate.stage ||
      reference.mode != candidate.mode || reference.t_comb_ns != candidate.t_comb_ns)
    throw Error(ErrorCode::MismatchedConfig,
                "time gain needs reports of the same design, stage and mode");
  return reference.t_pd_ns - candidate.t_pd_ns;
}

}  // namespace scanforge
