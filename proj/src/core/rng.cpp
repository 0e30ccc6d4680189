#include "tperm/rng.hpp"

#include "tperm/errors.hpp"

namespace tperm {

namespace {

std::mt19937_64 make_engine(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  return std::mt19937_64(seq);
}

// splitmix64 finalizer, used to spread child stream ids.
std::uint64_t mix(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

Rng::Rng(std::uint64_t seed, std::uint64_t stream)
    : seed_(seed), stream_(stream), engine_(make_engine(seed, stream)) {}

std::uint64_t Rng::below(std::uint64_t bound) {
  if (bound == 0) throw ValidationError("Rng::below(0)");
  // Rejection sampling on the top of the range keeps the draw unbiased.
  std::uint64_t limit = UINT64_MAX - (UINT64_MAX % bound + 1) % bound;
  for (;;) {
    std::uint64_t x = engine_();
    if (x <= limit) return x % bound;
  }
}

bool Rng::bernoulli(const Rational& p) {
  if (p < 0 || p > 1) throw ValidationError("probability outside [0, 1]");
  if (p == 0) return false;
  if (p == 1) return true;
  std::uint64_t num = to_u64(p.get_num());
  std::uint64_t den = to_u64(p.get_den());
  return below(den) < num;
}

Rng Rng::derive(std::uint64_t child) const { return Rng(seed_, mix(stream_ ^ mix(child + 1))); }

}  // namespace tperm
