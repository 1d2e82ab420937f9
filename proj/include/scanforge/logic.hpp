// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>

namespace scanforge {

/// Three-valued logic level. X is unknown/uninitialized.
enum class Logic : std::uint8_t { Zero = 0, One = 1, X = 2 };

constexpr Logic to_logic(bool b) noexcept { return b ? Logic::One : Logic::Zero; }
constexpr bool is_known(Logic v) noexcept { return v != Logic::X; }

constexpr Logic logic_not(Logic a) noexcept {
  if (a == Logic::X) return Logic::X;
  return a == Logic::One ? Logic::Zero : Logic::One;
}

constexpr Logic logic_and(Logic a, Logic b) noexcept {
  if (a == Logic::Zero || b == Logic::Zero) return Logic::Zero;
  if (a == Logic::One && b == Logic::One) return Logic::One;
  return Logic::X;
}

constexpr Logic logic_or(Logic a, Logic b) noexcept {
  if (a == Logic::One || b == Logic::One) return Logic::One;
  if (a == Logic::Zero && b == Logic::Zero) return Logic::Zero;
  return Logic::X;
}

constexpr Logic logic_xor(Logic a, Logic b) noexcept {
  if (a == Logic::X || b == Logic::X) return Logic::X;
  return to_logic(a != b);
}

/// Least upper bound: agreeing values stay, disagreement is X.
constexpr Logic logic_merge(Logic a, Logic b) noexcept { return a == b ? a : Logic::X; }

constexpr char to_char(Logic v) noexcept {
  switch (v) {
    case Logic::Zero: return '0';
    case Logic::One: return '1';
    default: return 'x';
  }
}

constexpr std::optional<Logic> logic_from_char(char c) noexcept {
  switch (c) {
    case '0': return Logic::Zero;
    case '1': return Logic::One;
    case 'x':
    case 'X': return Logic::X;
    default: return std::nullopt;
  }
}

}  // namespace scanforge
