#pragma once

#include "tperm/bigint.hpp"

#include <optional>

namespace tperm {

struct Parameters {
  int n = 0;
  int t = 0;
  std::optional<int> q;
  std::optional<Rational> eps;
  std::optional<Rational> delta;
  std::optional<Rational> M;

  /// Throws ValidationError unless 1 <= t <= n and, if q is set, t <= q <= n.
  Parameters(int n, int t, std::optional<int> q = std::nullopt);

  int u() const { return n - t; }
  int max_k() const { return (n - t) / 2; }
};

}  // namespace tperm
