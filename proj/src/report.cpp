// SPDX-License-Identifier: Apache-2.0
#include "scanforge/report.hpp"

#include <algorithm>
#include <sstream>

#include "scanforge/fixtures.hpp"

namespace scanforge::report {

json timing_section(const TimingReport& r, std::optional<double> gain_vs_mux_ns) {
  return {
      {"design", r.design},
      {"variant", to_string(r.variant)},
      {"mode", to_string(r.mode)},
      {"stage", to_string(r.stage)},
      {"t_comb_ns", r.t_comb_ns},
      {"t_su_ns", r.t_su_ns},
      {"t_cq_ns", r.t_cq_ns},
      {"t_pd_ns", r.t_pd_ns},
      {"t_pd_sum_ns", r.t_su_ns + r.t_cq_ns},
      {"t_pd_flagged", r.t_pd_flagged},
      {"t_clk_min_ns", r.t_clk_min_ns},
      {"f_max_hz", r.f_max_hz},
      {"critical_path", r.critical_path},
      {"gains_vs_mux", gain_vs_mux_ns ? json(*gain_vs_mux_ns) : json(nullptr)},
  };
}

json power_section(const PowerReport& r, std::optional<double> gain_vs_mux_pct) {
  json per_ff = json::array();
  for (const auto& f : r.per_ff) {
    per_ff.push_back({{"id", f.id},
                      {"energy_fj", f.energy_fj},
                      {"test_cycles", f.test_cycles},
                      {"functional_cycles", f.functional_cycles},
                      {"contention", f.contention}});
  }
  return {
      {"design", r.design},
      {"variant", to_string(r.variant)},
      {"mode", to_string(r.mode)},
      {"stage", to_string(r.stage)},
      {"cycles", r.cycles},
      {"t_clk_ns", r.t_clk_ns},
      {"ff_internal_fj", r.ff_internal_energy_fj},
      {"comb_fj", r.combinational_energy_fj},
      {"avg_power_uw", r.total_avg_power_uw},
      {"gains_vs_mux_pct", gain_vs_mux_pct ? json(*gain_vs_mux_pct) : json(nullptr)},
      {"contention_cycles", r.contention_cycles},
      {"capture_billing", "functional"},
      {"per_ff", per_ff},
  };
}

json trace_summary(const ProtocolTrace& t) {
  json toggles = json::object();
  for (std::size_t i = 0; i < t.net_names.size(); ++i) toggles[t.net_names[i]] = t.ledger.net_toggles[i];
  json ffs = json::object();
  for (const auto& f : t.ledger.flip_flops)
    ffs[f.id] = {{"internal_toggles", f.internal_toggles}, {"contention", f.contention}};
  return {
      {"design", t.design},
      {"cycles", t.cycle_count()},
      {"phases",
       {{"functional", t.totals.functional},
        {"shift_in", t.totals.shift_in},
        {"launch", t.totals.launch},
        {"capture", t.totals.capture},
        {"shift_out", t.totals.shift_out}}},
      {"net_toggles", toggles},
      {"total_net_toggles", t.ledger.total_net_toggles()},
      {"peak_step_toggles", t.ledger.step_toggles.empty()
                                ? 0
                                : *std::max_element(t.ledger.step_toggles.begin(), t.ledger.step_toggles.end())},
      {"flip_flops", ffs},
      {"warnings", t.warnings},
  };
}

json chain_section(const ScanChainPlan& plan) {
  return {{"variant", to_string(plan.variant)},
          {"order", plan.order},
          {"chain_length", plan.order.size()},
          {"scan_in", plan.scan_in},
          {"scan_out", plan.scan_out},
          {"scan_enable", plan.scan_enable}};
}

json equivalence_section(const EquivalenceReport& r) {
  return {{"sequences", r.sequences},
          {"phases_compared", r.phases_compared},
          {"mismatches", r.mismatches},
          {"first_mismatch", r.first_mismatch ? json(*r.first_mismatch) : json(nullptr)},
          {"verdict", r.equivalent() ? "equivalent" : "not_equivalent"}};
}

json compare_report(Stage stage, const CellLibrary& lib, const std::optional<Netlist>& design) {
  const Netlist n = design ? *design : zero_cloud_netlist();
  json rows = json::array();
  for (Mode mode : kAllModes) {
    const TimingReport ref = analyze_timing(n, FFVariant::Mux, stage, mode, lib);
    const double ref_power = lib.ff(FFVariant::Mux, stage).mode(mode).avg_power_uw;
    for (FFVariant v : kAllVariants) {
      const TimingReport r = analyze_timing(n, v, stage, mode, lib);
      const double p = lib.ff(v, stage).mode(mode).avg_power_uw;
      const bool is_ref = v == FFVariant::Mux;
      rows.push_back({
          {"variant", to_string(v)},
          {"mode", to_string(mode)},
          {"t_su_ns", r.t_su_ns},
          {"t_cq_ns", r.t_cq_ns},
          {"t_pd_ns", r.t_pd_ns},
          {"t_pd_flagged", r.t_pd_flagged},
          {"t_comb_ns", r.t_comb_ns},
          {"t_clk_min_ns", r.t_clk_min_ns},
          {"f_max_hz", r.f_max_hz},
          {"power_uw", p},
          {"area", lib.ff(v, stage).area},
          {"time_gain_ns", is_ref ? json(nullptr) : json(time_gain(ref, r))},
          {"power_gain_pct", is_ref ? json(nullptr) : json(power_gain(ref_power, p))},
      });
    }
  }
  json lit = json::array();
  for (const auto& row : comparison_table()) {
    lit.push_back({{"label", row.label},
                   {"t_pd_ns", row.t_pd_ns},
                   {"power_uw", row.power_uw ? json(*row.power_uw) : json(nullptr)},
                   {"area", row.area}});
  }
  return {{"design", n.name}, {"stage", to_string(stage)}, {"rows", rows}, {"literature", lit}};
}

json error_json(const Error& e) {
  json err = {{"code", code_name(e.code())}, {"message", e.what()}};
  if (e.where()) {
    err["line"] = e.where()->line;
    err["column"] = e.where()->column;
  }
  if (!e.subjects().empty()) err["subjects"] = e.subjects();
  return {{"error", err}};
}

std::optional<Format> parse_format(std::string_view s) {
  if (s == "json") return Format::Json;
  if (s == "csv") return Format::Csv;
  if (s == "text") return Format::Text;
  return std::nullopt;
}

namespace {

std::string scalar_text(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_null()) return "-";
  return v.dump();
}

void flatten(const json& v, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& out) {
  if (v.is_object()) {
    for (const auto& [k, child] : v.items()) flatten(child, prefix.empty() ? k : prefix + "." + k, out);
  } else if (v.is_array() && !v.empty() && !v.front().is_primitive()) {
    for (std::size_t i = 0; i < v.size(); ++i) flatten(v[i], prefix + "." + std::to_string(i), out);
  } else if (v.is_array()) {
    std::string joined;
    for (const auto& e : v) joined += (joined.empty() ? "" : " ") + scalar_text(e);
    out.emplace_back(prefix, joined);
  } else {
    out.emplace_back(prefix, scalar_text(v));
  }
}

const json* find_table(const json& v) {
  if (v.is_array() && !v.empty() && v.front().is_object()) return &v;
  if (v.is_object()) {
    if (auto it = v.find("rows"); it != v.end() && it->is_array() && !it->empty()) return &*it;
    for (const auto& [k, child] : v.items())
      if (const json* t = find_table(child)) return t;
  }
  return nullptr;
}

std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

}  // namespace

std::string render(const json& doc, Format f) {
  if (f == Format::Json) return doc.dump(2) + "\n";
  std::ostringstream os;
  if (f == Format::Csv) {
    if (const json* table = find_table(doc)) {
      std::vector<std::string> cols;
      for (const auto& [k, v] : table->front().items()) cols.push_back(k);
      for (std::size_t i = 0; i < cols.size(); ++i) os << (i ? "," : "") << cols[i];
      os << '\n';
      for (const auto& row : *table) {
        for (std::size_t i = 0; i < cols.size(); ++i) {
          const json& cell = row.contains(cols[i]) ? row[cols[i]] : json(nullptr);
          std::vector<std::pair<std::string, std::string>> flat;
          flatten(cell, "", flat);
          os << (i ? "," : "") << csv_cell(flat.empty() ? "" : flat.front().second);
        }
        os << '\n';
      }
      return os.str();
    }
  }
  std::vector<std::pair<std::string, std::string>> flat;
  flatten(doc, "", flat);
  for (const auto& [k, v] : flat) {
    if (f == Format::Csv) os << csv_cell(k) << ',' << csv_cell(v) << '\n';
    else os << k << ": " << v << '\n';
  }
  return os.str();
}

}  // namespace scanforge::report
