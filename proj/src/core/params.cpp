#include "tperm/params.hpp"

#include "tperm/errors.hpp"

#include <string>

namespace tperm {

Parameters::Parameters(int n_, int t_, std::optional<int> q_) : n(n_), t(t_), q(q_) {
  if (n < 1) throw ValidationError("n must be positive");
  if (t < 1 || t > n) throw ValidationError("t must satisfy 1 <= t <= n (got t=" + std::to_string(t) + ")");
  if (q && (*q < t || *q > n)) throw ValidationError("q must satisfy t <= q <= n");
}

}  // namespace tperm
