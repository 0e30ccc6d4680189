#pragma once

#include "tperm/bigint.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace tperm {

/// Seeded generator with cheap derived streams. Two generators built from the
/// same (seed, stream) produce identical sequences on every platform, because
/// all draws go through next() rather than the std distributions.
class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream() const { return stream_; }

  std::uint64_t next() { return engine_(); }
  /// Uniform in [0, bound); bound > 0.
  std::uint64_t below(std::uint64_t bound);
  /// True with probability exactly p (0 <= p <= 1, p = a/b with b < 2^64).
  bool bernoulli(const Rational& p);

  /// Independent child stream, a pure function of (seed, stream, child).
  Rng derive(std::uint64_t child) const;

  template <class T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(below(i));
      std::swap(v[i - 1], v[j]);
    }
  }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::mt19937_64 engine_;
};

}  // namespace tperm
