#include "tperm/kernels.hpp"

#include <bit>
#include <cstring>

namespace tperm::simd {

namespace {

std::uint64_t popcount_scalar(const std::uint64_t* w, std::size_t nwords) {
  std::uint64_t c = 0;
  for (std::size_t i = 0; i < nwords; ++i) c += std::popcount(w[i]);
  return c;
}

bool and_into_scalar(std::uint64_t* dst, const std::uint64_t* a, const std::uint64_t* b, std::size_t nwords) {
  std::uint64_t any = 0;
  for (std::size_t i = 0; i < nwords; ++i) {
    dst[i] = a[i] & b[i];
    any |= dst[i];
  }
  return any != 0;
}

void andnot_scalar(std::uint64_t* dst, const std::uint64_t* b, std::size_t nwords) {
  for (std::size_t i = 0; i < nwords; ++i) dst[i] &= ~b[i];
}

void agreement_row_scalar(const std::uint8_t* probe, const std::uint8_t* rows, std::size_t count, int t,
                          std::uint64_t* out) {
  std::memset(out, 0, ((count + 63) / 64) * sizeof(std::uint64_t));
  for (std::size_t i = 0; i < count; ++i) {
    const std::uint8_t* row = rows + i * kRowBytes;
    int agree = 0;
    for (std::size_t b = 0; b < kRowBytes; ++b) agree += probe[b] == row[b];
    if (agree >= t) out[i / 64] |= std::uint64_t{1} << (i % 64);
  }
}

const KernelTable kScalar{"scalar", popcount_scalar, and_into_scalar, andnot_scalar, agreement_row_scalar};

}  // namespace

const KernelTable& scalar_kernels() { return kScalar; }

}  // namespace tperm::simd
