// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "scanforge/netlist.hpp"

namespace scanforge {

enum class Stage : std::uint8_t { PreLayout, PostLayout };
enum class Mode : std::uint8_t { Functional, Test };

inline constexpr Stage kAllStages[] = {Stage::PreLayout, Stage::PostLayout};
inline constexpr Mode kAllModes[] = {Mode::Functional, Mode::Test};

std::string_view to_string(Stage s);
std::string_view to_string(Mode m);
std::optional<Stage> parse_stage(std::string_view s);
std::optional<Mode> parse_mode(std::string_view s);

/// Printed t_pd values disagreeing with t_su + t_cq by more than this are flagged.
inline constexpr double kPdConsistencyTolNs = 0.005;

/// One (variant, stage, mode) characterization row. Values are kept exactly as
/// published, including rows whose t_pd is not the sum of its parts.
struct ModeTiming {
  double t_su_ns = 0;
  double t_cq_ns = 0;
  double t_pd_ns = 0;  // as printed
  double avg_power_uw = 0;

  double t_pd_sum_ns() const { return t_su_ns + t_cq_ns; }
  double pd_discrepancy_ns() const;
  bool inconsistent() const;
  bool operator==(const ModeTiming&) const = default;
};

struct FFVariantParams {
  FFVariant variant = FFVariant::Mux;
  Stage stage = Stage::PostLayout;
  ModeTiming functional;
  ModeTiming test;
  double area = 0;          // dimensionless; transistor count for the bundled rows
  double f_ref_hz = 1e9;    // operating point the average powers refer to

  const ModeTiming& mode(Mode m) const { return m == Mode::Functional ? functional : test; }
  ModeTiming& mode(Mode m) { return m == Mode::Functional ? functional : test; }
  /// Energy billed per clock cycle in femtojoules: avg_power / f_ref.
  double energy_per_cycle_fj(Mode m) const;
  bool operator==(const FFVariantParams&) const = default;
};

struct GateTiming {
  double delay_ns = 0;
  double energy_fj = 0;  // per output toggle
  bool operator==(const GateTiming&) const = default;
};

/// Combinational cell data. The shipped defaults are synthetic placeholders.
class GateParams {
 public:
  static GateParams defaults();

  /// Throws MissingParams when the type has no entry.
  const GateTiming& at(GateType t) const;
  bool contains(GateType t) const { return table_.count(t) != 0; }
  void set(GateType t, GateTiming timing);
  void erase(GateType t) { table_.erase(t); }
  bool operator==(const GateParams&) const = default;

 private:
  std::map<GateType, GateTiming> table_;
};

struct ScalingFactors {
  double delay_factor = 1;
  double power_factor = 1;
  double area_factor = 1;

  ScalingFactors inverse() const { return {1 / delay_factor, 1 / power_factor, 1 / area_factor}; }
};

FFVariantParams builtin_params(FFVariant variant, Stage stage);
/// Technology-node conversion: divide every delay, power and area by its factor.
FFVariantParams scale_params(const FFVariantParams& p, const ScalingFactors& f);

struct ComparisonRow {
  std::string label;
  double t_pd_ns = 0;
  std::optional<double> power_uw;
  double area = 0;
};

/// Test-mode comparison against published designs, all at 45 nm.
std::vector<ComparisonRow> comparison_table();

/// Flip-flop and gate characterization in one place, optionally overridden by a
/// .cellcfg file (INI-style: [gate.NAND2], [ff.APPROX], [ff.APPROX.post_layout.test]).
class CellLibrary {
 public:
  static CellLibrary builtin();
  static CellLibrary from_file(const std::string& path);

  /// Applies the overrides in `text` on top of the current contents.
  void apply_config(std::string_view text);

  const FFVariantParams& ff(FFVariant v, Stage s) const;
  FFVariantParams& ff(FFVariant v, Stage s);
  const GateParams& gates() const { return gates_; }
  GateParams& gates() { return gates_; }

  bool operator==(const CellLibrary&) const = default;

 private:
  std::map<std::pair<FFVariant, Stage>, FFVariantParams> ffs_;
  GateParams gates_;
};

}  // namespace scanforge
