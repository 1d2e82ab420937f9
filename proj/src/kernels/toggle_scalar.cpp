// SPDX-License-Identifier: Apache-2.0
#include <bit>

#include "scanforge/kernels.hpp"

namespace scanforge::kernels::detail {

std::uint64_t count_toggles_scalar(const std::uint64_t* pv, const std::uint64_t* pk,
                                   const std::uint64_t* cv, const std::uint64_t* ck, std::size_t n) {
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < n; ++i)
    total += static_cast<std::uint64_t>(std::popcount((pv[i] ^ cv[i]) & pk[i] & ck[i]));
  return total;
}

}  // namespace scanforge::kernels::detail
