#pragma once

#include "tperm/bigint.hpp"
#include "tperm/interval.hpp"
#include "tperm/partial_permutation.hpp"

#include <vector>

namespace tperm {

inline constexpr int kDefaultEnumerationCap = 9;

/// Throws ValidationError unless 1 <= t <= n and 0 <= k <= (n-t)/2.
void check_ak_range(int n, int t, int k);

/// pi fixes at least t+k of the indices 1..t+2k.
bool in_Ak(const PartialPermutation& pi, int t, int k);
/// All members of A_k in lexicographic order. Refuses n above `cap`.
std::vector<PartialPermutation> enumerate_Ak(int n, int t, int k, int cap = kDefaultEnumerationCap);
/// The diagonal {(1,1), ..., (t+2k, t+2k)}.
PartialPermutation ak_core(int n, int t, int k);

/// |A_k| by inclusion-exclusion over the number of fixed points in [t+2k].
BigCount ak_size_exact(int n, int t, int k);

struct AkBounds {
  BigCount lower;  // may be negative
  BigCount upper;
};
AkBounds ak_size_bounds(int n, int t, int k);

struct AkMax {
  int k = 0;  // smallest maximizing k
  BigCount size;
};
AkMax max_ak_size(int n, int t);

/// Number of permutations of [m] with no fixed point.
BigCount derangement_count(int m);
/// Checks D(m) >= m!/e - 1 with e enclosed from below.
Verdict derangement_lower_bound_check(int m);

}  // namespace tperm
