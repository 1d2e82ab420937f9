// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "scanforge/logic.hpp"

namespace scanforge::kernels {

/// Three-valued vector packed as two bit planes: `known` marks 0/1 positions,
/// `value` holds the bit where known (and 0 otherwise).
struct BitPlanes {
  std::vector<std::uint64_t> value;
  std::vector<std::uint64_t> known;
  std::size_t width = 0;

  static BitPlanes pack(std::span<const Logic> bits);
  Logic at(std::size_t i) const;
  bool operator==(const BitPlanes&) const = default;
};

enum class Backend { Scalar, Avx2, Neon };

std::string_view to_string(Backend b);
/// Compiled in and supported by the running CPU.
bool backend_available(Backend b);
/// Fastest available backend, chosen once at first use.
Backend active_backend();

/// Number of positions known in both snapshots whose values differ:
/// popcount((pv ^ cv) & pk & ck). All four spans must have equal length.
std::uint64_t count_toggles(std::span<const std::uint64_t> prev_value,
                            std::span<const std::uint64_t> prev_known,
                            std::span<const std::uint64_t> cur_value,
                            std::span<const std::uint64_t> cur_known);

std::uint64_t count_toggles(Backend b, std::span<const std::uint64_t> prev_value,
                            std::span<const std::uint64_t> prev_known,
                            std::span<const std::uint64_t> cur_value,
                            std::span<const std::uint64_t> cur_known);

inline std::uint64_t count_toggles(const BitPlanes& prev, const BitPlanes& cur) {
  return count_toggles(prev.value, prev.known, cur.value, cur.known);
}

namespace detail {
std::uint64_t count_toggles_scalar(const std::uint64_t* pv, const std::uint64_t* pk,
                                   const std::uint64_t* cv, const std::uint64_t* ck, std::size_t n);
std::uint64_t count_toggles_avx2(const std::uint64_t* pv, const std::uint64_t* pk,
                                 const std::uint64_t* cv, const std::uint64_t* ck, std::size_t n);
std::uint64_t count_toggles_neon(const std::uint64_t* pv, const std::uint64_t* pk,
                                 const std::uint64_t* cv, const std::uint64_t* ck, std::size_t n);
}  // namespace detail

}  // namespace scanforge::kernels
