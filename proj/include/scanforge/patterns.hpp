// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace scanforge {

/// A scan vector as text: leftmost character is the first bit shifted in.
struct ScanVector {
  std::string bits;
  std::optional<std::string> expected;  // 'x' marks a don't-care position

  bool operator==(const ScanVector&) const = default;
};

struct PatternSet {
  std::size_t chain_length = 0;
  std::vector<ScanVector> vectors;

  bool operator==(const PatternSet&) const = default;
};

/// Parses a .pat file: one vector per line, optional "-> <expected>" suffix,
/// '#' comments and blank lines ignored.
PatternSet parse_patterns(std::string_view text, std::size_t chain_length);
std::string serialize_patterns(const PatternSet& p);

}  // namespace scanforge
