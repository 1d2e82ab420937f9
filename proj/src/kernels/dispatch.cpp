// SPDX-License-Identifier: Apache-2.0
#include "scanforge/error.hpp"
#include "scanforge/kernels.hpp"

namespace scanforge::kernels {

BitPlanes BitPlanes::pack(std::span<const Logic> bits) {
  BitPlanes p;
  p.width = bits.size();
  std::size_t words = (bits.size() + 63) / 64;
  p.value.assign(words, 0);
  p.known.assign(words, 0);
  for (std::size_t i = 0; i < bits.size(); ++i) {
    const std::uint64_t bit = std::uint64_t{1} << (i % 64);
    if (bits[i] == Logic::X) continue;
    p.known[i / 64] |= bit;
    if (bits[i] == Logic::One) p.value[i / 64] |= bit;
  }
  return p;
}

Logic BitPlanes::at(std::size_t i) const {
  const std::uint64_t bit = std::uint64_t{1} << (i % 64);
  if (!(known[i / 64] & bit)) return Logic::X;
  return to_logic(value[i / 64] & bit);
}

std::string_view to_string(Backend b) {
  switch (b) {
    case Backend::Scalar: return "scalar";
    case Backend::Avx2: return "avx2";
    case Backend::Neon: return "neon";
  }
  return "?";
}

bool backend_available(Backend b) {
  switch (b) {
    case Backend::Scalar: return true;
    case Backend::Avx2:
#if defined(SCANFORGE_HAVE_AVX2) && (defined(__x86_64__) || defined(__i386__))
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
    case Backend::Neon:
#if defined(__aarch64__) || defined(__ARM_NEON)
      return true;
#else
      return false;
#endif
  }
  return false;
}

Backend active_backend() {
  static const Backend chosen = [] {
    if (backend_available(Backend::Avx2)) return Backend::Avx2;
    if (backend_available(Backend::Neon)) return Backend::Neon;
    return Backend::Scalar;
  }();
  return chosen;
}

std::uint64_t count_toggles(Backend b, std::span<const std::uint64_t> pv,
                            std::span<const std::uint64_t> pk, std::span<const std::uint64_t> cv,
                            std::span<const std::uint64_t> ck) {
  const std::size_t n = pv.size();
  if (pk.size() != n || cv.size() != n || ck.size() != n)
    throw Error(ErrorCode::WidthMismatch, "bit-plane lengths differ");
  if (!backend_available(b))
    throw Error(ErrorCode::MismatchedConfig,
                "kernel backend '" + std::string(to_string(b)) + "' is not available");
  switch (b) {
    case Backend::Avx2: return detail::count_toggles_avx2(pv.data(), pk.data(), cv.data(), ck.data(), n);
    case Backend::Neon: return detail::count_toggles_neon(pv.data(), pk.data(), cv.data(), ck.data(), n);
    case Backend::Scalar: break;
  }
  return detail::count_toggles_scalar(pv.data(), pk.data(), cv.data(), ck.data(), n);
}

std::uint64_t count_toggles(std::span<const std::uint64_t> pv, std::span<const std::uint64_t> pk,
                            std::span<const std::uint64_t> cv, std::span<const std::uint64_t> ck) {
  return count_toggles(active_backend(), pv, pk, cv, ck);
}

}  // namespace scanforge::kernels
