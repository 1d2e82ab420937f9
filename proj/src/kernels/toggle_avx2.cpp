// SPDX-License-Identifier: Apache-2.0
// Built with -mavx2; only called after a runtime CPU check.
#include "scanforge/kernels.hpp"

#if defined(__AVX2__)
#include <immintrin.h>
#endif

namespace scanforge::kernels::detail {

#if defined(__AVX2__)

namespace {

// Nibble-LUT popcount, accumulated per 64-bit lane with SAD.
inline __m256i popcount_epi64(__m256i v) {
  const __m256i lut = _mm256_setr_epi8(0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4,
                                       0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4);
  const __m256i low = _mm256_set1_epi8(0x0f);
  __m256i lo = _mm256_and_si256(v, low);
  __m256i hi = _mm256_and_si256(_mm256_srli_epi16(v, 4), low);
  __m256i cnt = _mm256_add_epi8(_mm256_shuffle_epi8(lut, lo), _mm256_shuffle_epi8(lut, hi));
  return _mm256_sad_epu8(cnt, _mm256_setzero_si256());
}

inline __m256i load(const std::uint64_t* p) {
  return _mm256_loadu_si256(reinterpret_cast<const __m256i*>(p));
}

}  // namespace

std::uint64_t count_toggles_avx2(const std::uint64_t* pv, const std::uint64_t* pk,
                                 const std::uint64_t* cv, const std::uint64_t* ck, std::size_t n) {
  constexpr std::size_t kLanes = 4;
  const std::size_t body = n - n % kLanes;
  __m256i acc = _mm256_setzero_si256();
  for (std::size_t i = 0; i < body; i += kLanes) {
    __m256i diff = _mm256_xor_si256(load(pv + i), load(cv + i));
    __m256i mask = _mm256_and_si256(load(pk + i), load(ck + i));
    acc = _mm256_add_epi64(acc, popcount_epi64(_mm256_and_si256(diff, mask)));
  }
  alignas(32) std::uint64_t lanes[kLanes];
  _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), acc);
  std::uint64_t total = lanes[0] + lanes[1] + lanes[2] + lanes[3];
  return total + count_toggles_scalar(pv + body, pk + body, cv + body, ck + body, n - body);
}

#else

std::uint64_t count_toggles_avx2(const std::uint64_t* pv, const std::uint64_t* pk,
                                 const std::uint64_t* cv, const std::uint64_t* ck, std::size_t n) {
  return count_toggles_scalar(pv, pk, cv, ck, n);
}

#endif

}  // namespace scanforge::kernels::detail
