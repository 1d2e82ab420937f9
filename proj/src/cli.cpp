// SPDX-License-Identifier: Apache-2.0
#include "scanforge/cli.hpp"

#include <cctype>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "scanforge/fixtures.hpp"
#include "scanforge/report.hpp"

namespace scanforge {
namespace {

using report::json;

struct RunConfig {
  std::string variant = "mux";
  std::string stage = "post_layout";
  std::string mode = "functional";
  std::optional<double> tclk_ns;
  std::string cells;
  std::uint64_t seed = 42;
  std::string output;
  std::string format = "json";
  std::vector<std::string> inputs;
  // subcommand specific
  std::string order = "decl";
  std::string stimulus;
  std::size_t cycles = 100;
  std::string vcd;
  std::string responses;
  bool pipelined = false;
  bool check_behavioral = false;
  std::size_t random_sequences = 10000;
  std::size_t random_length = 8;
  std::size_t exhaustive_length = 4;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open '" + path + "'", std::nullopt, {path});
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::Io, "cannot write '" + path + "'", std::nullopt, {path});
  out << text;
}

CellLibrary load_library(const RunConfig& cfg) {
  if (!cfg.cells.empty()) return CellLibrary::from_file(cfg.cells);
  if (const char* env = std::getenv("SCANFORGE_CELLS"); env && *env) return CellLibrary::from_file(env);
  return CellLibrary::builtin();
}

FFVariant variant_of(const RunConfig& cfg) { return *parse_variant(cfg.variant); }
Stage stage_of(const RunConfig& cfg) { return *parse_stage(cfg.stage); }
Mode mode_of(const RunConfig& cfg) { return *parse_mode(cfg.mode); }

Netlist load_netlist(const std::string& path) { return parse_netlist(read_file(path)); }

// Netlists without a chain get one in declaration order.
Netlist ensure_chain(const Netlist& n, FFVariant v) {
  if (has_scan_chain(n)) return n;
  return insert_scan(n, declaration_order_plan(n, v));
}

ScanChainPlan plan_from_order(const Netlist& n, FFVariant v, const std::string& order) {
  if (order == "decl") return declaration_order_plan(n, v);
  constexpr std::string_view kFile = "file:";
  if (order.rfind(kFile, 0) != 0)
    throw Error(ErrorCode::PlanMismatch, "order must be 'decl' or 'file:<path>'", std::nullopt, {order});
  ScanChainPlan plan;
  plan.variant = v;
  std::istringstream is(read_file(order.substr(kFile.size())));
  for (std::string id; is >> id;) {
    if (id.front() == '#') {
      std::getline(is, id);
      continue;
    }
    plan.order.push_back(id);
  }
  return plan;
}

Stimulus load_stimulus(const std::string& path, std::size_t width) {
  Stimulus s;
  std::istringstream is(read_file(path));
  std::size_t line_no = 0;
  for (std::string line; std::getline(is, line);) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::vector<Logic> row;
    std::size_t col = 0;
    for (char c : line) {
      ++col;
      if (std::isspace(static_cast<unsigned char>(c))) continue;
      auto v = logic_from_char(c);
      if (!v)
        throw Error(ErrorCode::StimulusMismatch, std::string("illegal stimulus character '") + c + "'",
                    SourceLocation{line_no, col});
      row.push_back(*v);
    }
    if (row.empty()) continue;
    if (row.size() != width)
      throw Error(ErrorCode::StimulusMismatch,
                  "stimulus row has " + std::to_string(row.size()) + " bits, expected " + std::to_string(width),
                  SourceLocation{line_no, 1});
    s.push_back(std::move(row));
  }
  return s;
}

Stimulus random_stimulus(std::size_t width, std::size_t cycles, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Stimulus s(cycles, std::vector<Logic>(width));
  for (auto& row : s)
    for (auto& v : row) v = (rng() & 1) ? Logic::One : Logic::Zero;
  return s;
}

void emit(const RunConfig& cfg, const json& doc, std::ostream& out) {
  const std::string text = report::render(doc, *report::parse_format(cfg.format));
  if (cfg.output.empty()) out << text;
  else write_file(cfg.output, text);
}

void maybe_vcd(const RunConfig& cfg, const ProtocolTrace& t) {
  if (cfg.vcd.empty()) return;
  std::ostringstream os;
  write_vcd(t, os);
  write_file(cfg.vcd, os.str());
}

int cmd_insert(const RunConfig& cfg, std::ostream& out) {
  const Netlist n = load_netlist(cfg.inputs.at(0));
  const ScanChainPlan plan = plan_from_order(n, variant_of(cfg), cfg.order);
  const Netlist inserted = insert_scan(n, plan);
  verify_chain(inserted);
  const std::string text = serialize_netlist(inserted);
  if (cfg.output.empty()) {
    out << text;
    return kExitOk;
  }
  write_file(cfg.output, text);
  json doc = {{"command", "insert"}, {"chain", report::chain_section(plan)}, {"netlist", cfg.output}};
  out << report::render(doc, *report::parse_format(cfg.format));
  return kExitOk;
}

int cmd_sim(const RunConfig& cfg, std::ostream& out) {
  const Netlist n = load_netlist(cfg.inputs.at(0));
  const std::size_t width = functional_inputs(n).size();
  const Stimulus s = cfg.stimulus.empty() ? random_stimulus(width, cfg.cycles, cfg.seed)
                                          : load_stimulus(cfg.stimulus, width);
  const ProtocolTrace t = sim_functional(n, s, cfg.stimulus.empty() ? cfg.cycles : s.size());
  maybe_vcd(cfg, t);
  emit(cfg, {{"command", "sim"}, {"seed", cfg.seed}, {"trace", report::trace_summary(t)}}, out);
  return kExitOk;
}

int cmd_scan_test(const RunConfig& cfg, std::ostream& out) {
  const Netlist n = ensure_chain(load_netlist(cfg.inputs.at(0)), variant_of(cfg));
  const ScanChainPlan plan = verify_chain(n);
  const PatternSet p = parse_patterns(read_file(cfg.inputs.at(1)), plan.order.size());
  SimOptions opts;
  opts.pipelined = cfg.pipelined;
  const ScanTestResult r = run_scan_test(n, p, opts);
  maybe_vcd(cfg, r.trace);
  if (!cfg.responses.empty()) {
    std::string text;
    for (const auto& resp : r.responses) text += resp + "\n";
    write_file(cfg.responses, text);
  }
  json doc = {{"command", "scan-test"},
              {"chain", report::chain_section(plan)},
              {"vectors", p.vectors.size()},
              {"pipelined", cfg.pipelined},
              {"cycle_budget", cycle_budget(plan.order.size(), p.vectors.size(), cfg.pipelined)},
              {"responses", r.responses},
              {"mismatches", r.mismatches},
              {"trace", report::trace_summary(r.trace)}};
  emit(cfg, doc, out);
  return kExitOk;
}

int cmd_sta(const RunConfig& cfg, std::ostream& out) {
  const CellLibrary lib = load_library(cfg);
  const Netlist n = cfg.inputs.empty() ? zero_cloud_netlist() : load_netlist(cfg.inputs.at(0));
  const TimingReport r = analyze_timing(n, variant_of(cfg), stage_of(cfg), mode_of(cfg), lib);
  std::optional<double> gain;
  if (r.variant != FFVariant::Mux)
    gain = time_gain(analyze_timing(n, FFVariant::Mux, r.stage, r.mode, lib), r);
  emit(cfg, {{"command", "sta"}, {"timing", report::timing_section(r, gain)}}, out);
  return kExitOk;
}

int cmd_power(const RunConfig& cfg, std::ostream& out) {
  const CellLibrary lib = load_library(cfg);
  const FFVariant v = variant_of(cfg);
  const Stage stage = stage_of(cfg);
  Netlist n = load_netlist(cfg.inputs.at(0));
  ProtocolTrace trace;
  if (cfg.inputs.size() > 1) {
    n = ensure_chain(n, v);
    const PatternSet p = parse_patterns(read_file(cfg.inputs.at(1)), verify_chain(n).order.size());
    SimOptions opts;
    opts.pipelined = cfg.pipelined;
    trace = run_scan_test(n, p, opts).trace;
  } else {
    const std::size_t width = functional_inputs(n).size();
    const Stimulus s = cfg.stimulus.empty() ? random_stimulus(width, cfg.cycles, cfg.seed)
                                            : load_stimulus(cfg.stimulus, width);
    trace = sim_functional(n, s, cfg.stimulus.empty() ? cfg.cycles : s.size());
  }
  const double t_clk = cfg.tclk_ns ? *cfg.tclk_ns : 1e9 / lib.ff(v, stage).f_ref_hz;
  const PowerReport r = estimate_power(trace, v, stage, lib, t_clk);
  std::optional<double> gain;
  if (v != FFVariant::Mux) {
    const PowerReport ref = estimate_power(trace, FFVariant::Mux, stage, lib, t_clk);
    gain = power_gain(ref.total_avg_power_uw, r.total_avg_power_uw);
  }
  maybe_vcd(cfg, trace);
  emit(cfg, {{"command", "power"}, {"seed", cfg.seed}, {"power", report::power_section(r, gain)}}, out);
  return kExitOk;
}

std::optional<FFVariant> variant_from_filename(const std::string& path) {
  const std::string stem = std::filesystem::path(path).stem().string();
  for (FFVariant v : kAllVariants) {
    std::string name(to_string(v));
    for (auto& c : name) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (stem.rfind(name, 0) == 0) return v;
  }
  return std::nullopt;
}

int cmd_switchsim(const RunConfig& cfg, const CLI::App& sub, std::ostream& out) {
  const std::string& path = cfg.inputs.at(0);
  const sw::TransistorNetwork net = sw::load_network(read_file(path));
  std::size_t n_count = 0, p_count = 0;
  for (const auto& t : net.transistors()) (t.type == sw::MosType::N ? n_count : p_count)++;
  json doc = {{"command", "switchsim"},
              {"network",
               {{"file", std::filesystem::path(path).filename().string()},
                {"transistors", net.transistors().size()},
                {"nmos", n_count},
                {"pmos", p_count},
                {"nodes", net.nodes().size()}}}};
  if (!cfg.check_behavioral) {
    emit(cfg, doc, out);
    return kExitOk;
  }
  std::optional<FFVariant> v;
  if (sub.count("--variant")) v = variant_of(cfg);
  else v = variant_from_filename(path);
  if (!v) throw Error(ErrorCode::NetworkSyntax, "cannot infer flip-flop variant from '" + path + "'; pass --variant");
  std::vector<FFSequence> seqs = random_sequences(cfg.random_sequences, cfg.random_length, cfg.seed);
  std::vector<FFSequence> exh = exhaustive_sequences(cfg.exhaustive_length);
  seqs.insert(seqs.end(), exh.begin(), exh.end());
  const EquivalenceReport r = check_equivalence(net, to_kind(*v), seqs);
  doc["network"]["variant"] = to_string(*v);
  doc["seed"] = cfg.seed;
  doc["equivalence"] = report::equivalence_section(r);
  emit(cfg, doc, out);
  if (!r.equivalent())
    throw Error(ErrorCode::NotEquivalent,
                std::to_string(r.mismatches) + " sequence(s) differ from the behavioral model",
                std::nullopt, r.first_mismatch ? std::vector<std::string>{*r.first_mismatch} : std::vector<std::string>{});
  return kExitOk;
}

int cmd_compare(const RunConfig& cfg, std::ostream& out) {
  const CellLibrary lib = load_library(cfg);
  std::optional<Netlist> design;
  if (!cfg.inputs.empty()) design = load_netlist(cfg.inputs.at(0));
  json doc = report::compare_report(stage_of(cfg), lib, design);
  doc["command"] = "compare";
  emit(cfg, doc, out);
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"scan-chain insertion, simulation and analysis"};
  app.name("scantool");
  app.require_subcommand(1, 1);

  const auto variants = CLI::IsMember({"mux", "gdi", "approx", "MUX", "GDI", "APPROX"});
  auto common = [&](CLI::App* s, bool with_mode) {
    s->add_option("--variant", cfg.variant, "mux|gdi|approx")->check(variants);
    s->add_option("--stage", cfg.stage, "pre_layout|post_layout")->check(CLI::IsMember({"pre_layout", "post_layout"}));
    if (with_mode) s->add_option("--mode", cfg.mode, "functional|test")->check(CLI::IsMember({"functional", "test"}));
    s->add_option("--tclk", cfg.tclk_ns, "clock period in ns")->check(CLI::PositiveNumber);
    s->add_option("--cells", cfg.cells, "cell configuration file");
    s->add_option("--seed", cfg.seed, "seed for randomized stimulus");
    s->add_option("-o,--output", cfg.output, "output path");
    s->add_option("--format", cfg.format, "json|csv|text")->check(CLI::IsMember({"json", "csv", "text"}));
  };

  CLI::App* insert = app.add_subcommand("insert", "stitch flip-flops into a scan chain");
  common(insert, false);
  insert->add_option("--order", cfg.order, "decl or file:<path>");
  insert->add_option("netlist", cfg.inputs)->required()->expected(1);

  CLI::App* sim = app.add_subcommand("sim", "functional-mode simulation");
  common(sim, false);
  sim->add_option("--stimulus", cfg.stimulus, "per-cycle primary-input bits");
  sim->add_option("--cycles", cfg.cycles, "cycles of random stimulus");
  sim->add_option("--vcd", cfg.vcd, "waveform dump path");
  sim->add_option("netlist", cfg.inputs)->required()->expected(1);

  CLI::App* scan = app.add_subcommand("scan-test", "shift-in, capture and shift-out of a pattern set");
  common(scan, false);
  scan->add_flag("--pipelined", cfg.pipelined, "overlap shift-out with the next shift-in");
  scan->add_option("--vcd", cfg.vcd, "waveform dump path");
  scan->add_option("--responses", cfg.responses, "write captured responses here");
  scan->add_option("files", cfg.inputs, "netlist and pattern file")->required()->expected(2);

  CLI::App* sta = app.add_subcommand("sta", "static timing analysis");
  common(sta, true);
  sta->add_option("netlist", cfg.inputs)->expected(0, 1);

  CLI::App* power = app.add_subcommand("power", "power estimate from a simulated trace");
  common(power, false);
  power->add_flag("--pipelined", cfg.pipelined, "overlap shift-out with the next shift-in");
  power->add_option("--stimulus", cfg.stimulus, "per-cycle primary-input bits");
  power->add_option("--cycles", cfg.cycles, "cycles of random stimulus");
  power->add_option("--vcd", cfg.vcd, "waveform dump path");
  power->add_option("files", cfg.inputs, "netlist and optional pattern file")->required()->expected(1, 2);

  CLI::App* switchsim = app.add_subcommand("switchsim", "switch-level flip-flop network");
  common(switchsim, false);
  switchsim->add_flag("--check-behavioral", cfg.check_behavioral, "compare against the behavioral model");
  switchsim->add_option("--random", cfg.random_sequences, "random sequences");
  switchsim->add_option("--length", cfg.random_length, "random sequence length");
  switchsim->add_option("--exhaustive", cfg.exhaustive_length, "exhaustive sequence length")->check(CLI::Range(0, 6));
  switchsim->add_option("network", cfg.inputs)->required()->expected(1);

  CLI::App* compare = app.add_subcommand("compare", "variant comparison table");
  common(compare, false);
  compare->add_option("netlist", cfg.inputs)->expected(0, 1);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "scantool: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (insert->parsed()) return cmd_insert(cfg, out);
    if (sim->parsed()) return cmd_sim(cfg, out);
    if (scan->parsed()) return cmd_scan_test(cfg, out);
    if (sta->parsed()) return cmd_sta(cfg, out);
    if (power->parsed()) return cmd_power(cfg, out);
    if (switchsim->parsed()) return cmd_switchsim(cfg, *switchsim, out);
    if (compare->parsed()) return cmd_compare(cfg, out);
  } catch (const Error& e) {
    err << report::error_json(e).dump() << "\n";
    return kExitDomainError;
  }
  return kExitUsage;
}

}  // namespace scanforge
