#include "tperm/kernels.hpp"

#include <immintrin.h>

#include <cstring>

namespace tperm::simd {

namespace {

// Nibble-table popcount (Mula): vpshufb on each nibble, then vpsadbw to
// fold bytes into 64-bit lane sums.
std::uint64_t popcount_avx2(const std::uint64_t* w, std::size_t nwords) {
  const __m256i lut = _mm256_setr_epi8(0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4,
                                       0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4);
  const __m256i low = _mm256_set1_epi8(0x0f);
  __m256i acc = _mm256_setzero_si256();
  std::size_t i = 0;
  for (; i + 4 <= nwords; i += 4) {
    __m256i v = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(w + i));
    __m256i lo = _mm256_and_si256(v, low);
    __m256i hi = _mm256_and_si256(_mm256_srli_epi16(v, 4), low);
    __m256i cnt = _mm256_add_epi8(_mm256_shuffle_epi8(lut, lo), _mm256_shuffle_epi8(lut, hi));
    acc = _mm256_add_epi64(acc, _mm256_sad_epu8(cnt, _mm256_setzero_si256()));
  }
  std::uint64_t lanes[4];
  _mm256_storeu_si256(reinterpret_cast<__m256i*>(lanes), acc);
  std::uint64_t c = lanes[0] + lanes[1] + lanes[2] + lanes[3];
  for (; i < nwords; ++i) c += __builtin_popcountll(w[i]);
  return c;
}

bool and_into_avx2(std::uint64_t* dst, const std::uint64_t* a, const std::uint64_t* b, std::size_t nwords) {
  __m256i any = _mm256_setzero_si256();
  std::size_t i = 0;
  for (; i + 4 <= nwords; i += 4) {
    __m256i v = _mm256_and_si256(_mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i)),
                                 _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i)));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i), v);
    any = _mm256_or_si256(any, v);
  }
  std::uint64_t rest = 0;
  for (; i < nwords; ++i) {
    dst[i] = a[i] & b[i];
    rest |= dst[i];
  }
  return rest != 0 || !_mm256_testz_si256(any, any);
}

void andnot_avx2(std::uint64_t* dst, const std::uint64_t* b, std::size_t nwords) {
  std::size_t i = 0;
  for (; i + 4 <= nwords; i += 4) {
    __m256i d = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(dst + i));
    __m256i m = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i), _mm256_andnot_si256(m, d));
  }
  for (; i < nwords; ++i) dst[i] &= ~b[i];
}

// Two 16-byte rows per 256-bit compare.
void agreement_row_avx2(const std::uint8_t* probe, const std::uint8_t* rows, std::size_t count, int t,
                        std::uint64_t* out) {
  std::memset(out, 0, ((count + 63) / 64) * sizeof(std::uint64_t));
  const __m128i p128 = _mm_loadu_si128(reinterpret_cast<const __m128i*>(probe));
  const __m256i p = _mm256_broadcastsi128_si256(p128);
  std::size_t i = 0;
  for (; i + 2 <= count; i += 2) {
    __m256i r = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(rows + i * kRowBytes));
    std::uint32_t mask = static_cast<std::uint32_t>(_mm256_movemask_epi8(_mm256_cmpeq_epi8(p, r)));
    if (__builtin_popcount(mask & 0xffffu) >= t) out[i / 64] |= std::uint64_t{1} << (i % 64);
    if (__builtin_popcount(mask >> 16) >= t) out[(i + 1) / 64] |= std::uint64_t{1} << ((i + 1) % 64);
  }
  if (i < count) {
    __m128i r = _mm_loadu_si128(reinterpret_cast<const __m128i*>(rows + i * kRowBytes));
    std::uint32_t mask = static_cast<std::uint32_t>(_mm_movemask_epi8(_mm_cmpeq_epi8(p128, r)));
    if (__builtin_popcount(mask) >= t) out[i / 64] |= std::uint64_t{1} << (i % 64);
  }
}

const KernelTable kAvx2{"avx2", popcount_avx2, and_into_avx2, andnot_avx2, agreement_row_avx2};

}  // namespace

const KernelTable* avx2_kernels_impl() { return &kAvx2; }

}  // namespace tperm::simd
