// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>

#include "json.hpp"

#include "scanforge/cell_library.hpp"
#include "scanforge/error.hpp"
#include "scanforge/ff_equivalence.hpp"
#include "scanforge/power.hpp"
#include "scanforge/protocol_sim.hpp"
#include "scanforge/scan_insertion.hpp"
#include "scanforge/sta.hpp"

namespace scanforge::report {

using nlohmann::json;

inline constexpr int kSchemaVersion = 1;

json timing_section(const TimingReport& r, std::optional<double> gain_vs_mux_ns);
json power_section(const PowerReport& r, std::optional<double> gain_vs_mux_pct);
json trace_summary(const ProtocolTrace& t);
json chain_section(const ScanChainPlan& plan);
json equivalence_section(const EquivalenceReport& r);

/// Every variant x mode at one stage, with time and power gains against MUX,
/// plus the published comparison rows. Timing uses `design`, or the zero-cloud
/// fixture when absent.
json compare_report(Stage stage, const CellLibrary& lib, const std::optional<Netlist>& design);

json error_json(const Error& e);

enum class Format { Json, Csv, Text };
std::optional<Format> parse_format(std::string_view s);

/// Renders a report document. CSV uses the first array of objects found (a
/// table) or falls back to flattened key/value pairs, as does text.
std::string render(const json& doc, Format f);

}  // namespace scanforge::report
