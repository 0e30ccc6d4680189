#pragma once

#include <cstddef>
#include <cstdint>

namespace tperm::simd {

/// Bytes per permutation row in the agreement kernel. Rows shorter than this
/// are padded; probe and rows use different pad bytes so padding never agrees.
inline constexpr std::size_t kRowBytes = 16;
inline constexpr std::uint8_t kProbePad = 0xFF;
inline constexpr std::uint8_t kRowPad = 0xFE;

struct KernelTable {
  const char* name;
  std::uint64_t (*popcount)(const std::uint64_t* w, std::size_t nwords);
  /// dst = a & b; returns true if any bit of dst is set.
  bool (*and_into)(std::uint64_t* dst, const std::uint64_t* a, const std::uint64_t* b, std::size_t nwords);
  /// dst &= ~b
  void (*andnot_inplace)(std::uint64_t* dst, const std::uint64_t* b, std::size_t nwords);
  /// For each of `count` rows (kRowBytes each), sets bit i of out iff the row
  /// agrees with probe in at least t positions. out must hold ceil(count/64)
  /// words and is overwritten.
  void (*agreement_row)(const std::uint8_t* probe, const std::uint8_t* rows, std::size_t count, int t,
                        std::uint64_t* out);
};

const KernelTable& scalar_kernels();
/// nullptr when the library was built without AVX2 support.
const KernelTable* avx2_kernels();
/// AVX2 if compiled in and supported by the CPU, unless TPERM_SIMD=scalar.
const KernelTable& active_kernels();

}  // namespace tperm::simd
