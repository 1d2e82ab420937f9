// SPDX-License-Identifier: Apache-2.0
#include "scanforge/cell_library.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <cmath>
#include <fstream>
#include <sstream>

#include "scanforge/error.hpp"

namespace scanforge {

std::string_view to_string(Stage s) { return s == Stage::PreLayout ? "pre_layout" : "post_layout"; }
std::string_view to_string(Mode m) { return m == Mode::Functional ? "functional" : "test"; }

std::optional<Stage> parse_stage(std::string_view s) {
  if (s == "pre_layout") return Stage::PreLayout;
  if (s == "post_layout") return Stage::PostLayout;
  return std::nullopt;
}

std::optional<Mode> parse_mode(std::string_view s) {
  if (s == "functional") return Mode::Functional;
  if (s == "test") return Mode::Test;
  return std::nullopt;
}

double ModeTiming::pd_discrepancy_ns() const { return std::abs(t_pd_ns - t_pd_sum_ns()); }

// The slack keeps rows sitting exactly on the tolerance (0.35 vs 0.355) unflagged.
bool ModeTiming::inconsistent() const { return pd_discrepancy_ns() > kPdConsistencyTolNs + 1e-9; }

double FFVariantParams::energy_per_cycle_fj(Mode m) const {
  // uW / Hz = 1e-6 J; expressed in fJ
  return mode(m).avg_power_uw * 1e9 / f_ref_hz;
}

// ---------------------------------------------------------------------------

GateParams GateParams::defaults() {
  GateParams p;
  p.set(GateType::Inv, {0.03, 0.3});
  p.set(GateType::Buf, {0.04, 0.4});
  p.set(GateType::Nand2, {0.05, 0.5});
  p.set(GateType::Nor2, {0.06, 0.6});
  p.set(GateType::And2, {0.07, 0.7});
  p.set(GateType::Or2, {0.08, 0.8});
  p.set(GateType::Xor2, {0.09, 0.9});
  return p;
}

const GateTiming& GateParams::at(GateType t) const {
  auto it = table_.find(t);
  if (it == table_.end())
    throw Error(ErrorCode::MissingParams,
                "no delay/energy data for gate type " + std::string(to_string(t)));
  return it->second;
}

void GateParams::set(GateType t, GateTiming timing) {
  if (!(timing.delay_ns > 0) || !(timing.energy_fj >= 0))
    throw Error(ErrorCode::CellConfigSyntax,
                "gate " + std::string(to_string(t)) + " needs delay > 0 and energy >= 0");
  table_[t] = timing;
}

// ---------------------------------------------------------------------------

FFVariantParams builtin_params(FFVariant variant, Stage stage) {
  FFVariantParams p;
  p.variant = variant;
  p.stage = stage;
  //                      t_su   t_cq   t_pd   power
  if (stage == Stage::PreLayout) {
    switch (variant) {
      case FFVariant::Mux:
        p.functional = {0.058, 0.141, 0.19, 2.65};
        p.test = {0.06, 0.14, 0.2, 2.1};
        break;
      case FFVariant::Gdi:
        p.functional = {0.18, 0.14, 0.32, 0.56};
        p.test = {0.38, 0.13, 0.51, 0.57};
        break;
      case FFVariant::Approx:
        p.functional = {0.06, 0.14, 0.2, 0.41};
        p.test = {0.04, 0.14, 0.18, 0.44};
        break;
    }
  } else {
    switch (variant) {
      case FFVariant::Mux:
        p.functional = {0.088, 0.283, 0.371, 3.62};
        p.test = {0.085, 0.05, 0.365, 3.81};
        break;
      case FFVariant::Gdi:
        p.functional = {0.66, 0.284, 1.05, 1.06};
        p.test = {0.77, 0.282, 0.94, 1.37};
        break;
      case FFVariant::Approx:
        p.functional = {0.055, 0.3, 0.35, 0.51};
        p.test = {0.04, 0.3, 0.34, 0.56};
        break;
    }
  }
  switch (variant) {
    case FFVariant::Mux: p.area = 16; break;
    case FFVariant::Gdi: p.area = 12; break;
    case FFVariant::Approx: p.area = 14; break;
  }
  return p;
}

FFVariantParams scale_params(const FFVariantParams& p, const ScalingFactors& f) {
  if (!(f.delay_factor > 0) || !(f.power_factor > 0) || !(f.area_factor > 0))
    throw Error(ErrorCode::NonpositiveFactor, "scaling factors must be strictly positive");
  FFVariantParams out = p;
  for (Mode m : kAllModes) {
    ModeTiming& t = out.mode(m);
    t.t_su_ns /= f.delay_factor;
    t.t_cq_ns /= f.delay_factor;
    t.t_pd_ns /= f.delay_factor;
    t.avg_power_uw /= f.power_factor;
  }
  out.area /= f.area_factor;
  return out;
}

std::vector<ComparisonRow> comparison_table() {
  return {
      {"mishra2010", 0.077, std::nullopt, 26},
      {"kumar2009", 0.043, 8.98, 33},
      {"ahlawat2018", 0.674, std::nullopt, 38},
      {"MUX", 0.36, 3.81, 16},
      {"GDI", 0.94, 1.37, 12},
      {"APPROX", 0.34, 0.56, 14},
  };
}

// ---------------------------------------------------------------------------

CellLibrary CellLibrary::builtin() {
  CellLibrary lib;
  for (FFVariant v : kAllVariants)
    for (Stage s : kAllStages) lib.ffs_[{v, s}] = builtin_params(v, s);
  lib.gates_ = GateParams::defaults();
  return lib;
}

CellLibrary CellLibrary::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open cell config '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  CellLibrary lib = builtin();
  lib.apply_config(ss.str());
  return lib;
}

const FFVariantParams& CellLibrary::ff(FFVariant v, Stage s) const {
  auto it = ffs_.find({v, s});
  if (it == ffs_.end())
    throw Error(ErrorCode::MissingParams, "no parameters for " + std::string(to_string(v)) + "/" +
                                              std::string(to_string(s)));
  return it->second;
}

FFVariantParams& CellLibrary::ff(FFVariant v, Stage s) {
  return const_cast<FFVariantParams&>(std::as_const(*this).ff(v, s));
}

namespace {

std::vector<std::string> split_dots(const std::string& s) {
  std::vector<std::string> parts;
  std::stringstream ss(s);
  std::string part;
  while (std::getline(ss, part, '.')) parts.push_back(part);
  return parts;
}

[[noreturn]] void bad_config(const std::string& msg) {
  throw Error(ErrorCode::CellConfigSyntax, msg);
}

double number(const std::string& section, const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    double d = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return d;
  } catch (const std::exception&) {
    bad_config("[" + section + "] " + key + ": '" + value + "' is not a number");
  }
}

}  // namespace

void CellLibrary::apply_config(std::string_view text) {
  namespace pt = boost::property_tree;
  pt::ptree tree;
  std::istringstream in{std::string(text)};
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw Error(ErrorCode::CellConfigSyntax, e.message(), SourceLocation{e.line(), 1});
  }

  for (const auto& [section, body] : tree) {
    if (body.empty() && !body.data().empty())
      bad_config("key '" + section + "' outside of a section");
    auto parts = split_dots(section);
    auto for_keys = [&](auto&& handler) {
      for (const auto& [key, val] : body) handler(key, number(section, key, val.data()));
    };

    if (parts.size() == 1 && parts[0] == "library") {
      for_keys([&](const std::string& key, double value) {
        if (key != "f_ref_hz") bad_config("[library] unknown key '" + key + "'");
        if (!(value > 0)) bad_config("f_ref_hz must be positive");
        for (auto& [k, p] : ffs_) p.f_ref_hz = value;
      });
    } else if (parts.size() == 2 && parts[0] == "gate") {
      auto type = parse_gate_type(parts[1]);
      if (!type) bad_config("unknown gate type '" + parts[1] + "'");
      GateTiming g = gates_.contains(*type) ? gates_.at(*type) : GateTiming{};
      for_keys([&](const std::string& key, double value) {
        if (key == "delay_ns") g.delay_ns = value;
        else if (key == "energy_fj") g.energy_fj = value;
        else bad_config("[" + section + "] unknown key '" + key + "'");
      });
      gates_.set(*type, g);
    } else if (parts.size() == 2 && parts[0] == "ff") {
      auto v = parse_variant(parts[1]);
      if (!v || parts[1] != to_string(*v)) bad_config("unknown variant '" + parts[1] + "'");
      for_keys([&](const std::string& key, double value) {
        if (key != "area") bad_config("[" + section + "] unknown key '" + key + "'");
        if (!(value > 0)) bad_config("area must be positive");
        for (Stage s : kAllStages) ff(*v, s).area = value;
      });
    } else if (parts.size() == 4 && parts[0] == "ff") {
      auto v = parse_variant(parts[1]);
      auto s = parse_stage(parts[2]);
      auto m = parse_mode(parts[3]);
      if (!v || parts[1] != to_string(*v) || !s || !m) bad_config("bad section [" + section + "]");
      ModeTiming t = ff(*v, *s).mode(*m);
      for_keys([&](const std::string& key, double value) {
        if (key == "t_su_ns") t.t_su_ns = value;
        else if (key == "t_cq_ns") t.t_cq_ns = value;
        else if (key == "t_pd_ns") t.t_pd_ns = value;
        else if (key == "power_uw") t.avg_power_uw = value;
        else bad_config("[" + section + "] unknown key '" + key + "'");
      });
      if (!(t.t_su_ns >= 0) || !(t.t_cq_ns > 0) || !(t.avg_power_uw > 0))
        bad_config("[" + section + "] needs t_su >= 0, t_cq > 0, power > 0");
      ff(*v, *s).mode(*m) = t;
    } else {
      bad_config("unknown section [" + section + "]");
    }
  }
}

}  // namespace scanforge
