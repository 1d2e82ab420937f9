// SPDX-License-Identifier: Apache-2.0
#include "scanforge/kernels.hpp"

#if defined(__aarch64__) || defined(__ARM_NEON)
#include <arm_neon.h>
#endif

namespace scanforge::kernels::detail {

#if defined(__aarch64__) || defined(__ARM_NEON)

std::uint64_t count_toggles_neon(const std::uint64_t* pv, const std::uint64_t* pk,
                                 const std::uint64_t* cv, const std::uint64_t* ck, std::size_t n) {
  const std::size_t body = n - n % 2;
  uint64x2_t acc = vdupq_n_u64(0);
  for (std::size_t i = 0; i < body; i += 2) {
    uint64x2_t diff = veorq_u64(vld1q_u64(pv + i), vld1q_u64(cv + i));
    uint64x2_t mask = vandq_u64(vld1q_u64(pk + i), vld1q_u64(ck + i));
    uint8x16_t bytes = vcntq_u8(vreinterpretq_u8_u64(vandq_u64(diff, mask)));
    acc = vaddq_u64(acc, vpaddlq_u32(vpaddlq_u16(vpaddlq_u8(bytes))));
  }
  std::uint64_t total = vgetq_lane_u64(acc, 0) + vgetq_lane_u64(acc, 1);
  return total + count_toggles_scalar(pv + body, pk + body, cv + body, ck + body, n - body);
}

#else

std::uint64_t count_toggles_neon(const std::uint64_t* pv, const std::uint64_t* pk,
                                 const std::uint64_t* cv, const std::uint64_t* ck, std::size_t n) {
  return count_toggles_scalar(pv, pk, cv, ck, n);
}

#endif

}  // namespace scanforge::kernels::detail
