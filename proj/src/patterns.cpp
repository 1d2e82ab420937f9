// SPDX-License-Identifier: Apache-2.0
#include "scanforge/patterns.hpp"

#include <cctype>

#include "scanforge/error.hpp"

namespace scanforge {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::string check_bits(std::string_view field, std::size_t width, std::size_t line,
                       std::size_t column_offset, bool allow_x = false) {
  for (std::size_t i = 0; i < field.size(); ++i) {
    const bool dont_care = allow_x && (field[i] == 'x' || field[i] == 'X');
    if (field[i] != '0' && field[i] != '1' && !dont_care)
      throw Error(ErrorCode::PatternIllegalCharacter,
                  std::string("illegal character '") + field[i] + "' in pattern",
                  SourceLocation{line, column_offset + i + 1});
  }
  if (field.size() != width)
    throw Error(ErrorCode::PatternWidthMismatch,
                "pattern has width " + std::to_string(field.size()) + ", chain length is " +
                    std::to_string(width),
                SourceLocation{line, column_offset + 1});
  return std::string(field);
}

}  // namespace

PatternSet parse_patterns(std::string_view text, std::size_t chain_length) {
  if (chain_length == 0)
    throw Error(ErrorCode::PatternWidthMismatch, "chain length must be at least 1");
  PatternSet set{chain_length, {}};
  std::size_t pos = 0;
  std::size_t line_no = 0;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view raw = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    std::string_view line = trim(raw);
    if (line.empty()) continue;
    std::size_t offset = static_cast<std::size_t>(line.data() - raw.data());

    ScanVector vec;
    auto arrow = line.find("->");
    std::string_view stim = trim(line.substr(0, arrow));
    vec.bits = check_bits(stim, chain_length, line_no, offset);
    if (arrow != std::string_view::npos) {
      std::string_view rest = line.substr(arrow + 2);
      std::string_view exp = trim(rest);
      std::size_t exp_off = offset + arrow + 2 + static_cast<std::size_t>(exp.data() - rest.data());
      vec.expected = check_bits(exp, chain_length, line_no, exp_off, true);
    }
    set.vectors.push_back(std::move(vec));
  }
  return set;
}

std::string serialize_patterns(const PatternSet& p) {
  std::string out;
  for (const auto& v : p.vectors) {
    out += v.bits;
    if (v.expected) out += " -> " + *v.expected;
    out += '\n';
  }
  return out;
}

}  // namespace scanforge
