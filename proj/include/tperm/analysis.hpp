#pragma once

#include "tperm/bigint.hpp"
#include "tperm/family.hpp"
#include "tperm/peeling.hpp"

#include <optional>
#include <string>
#include <vector>

namespace tperm {

struct CriticalK {
  int k = 0;
  bool threshold_passed = false;
  BigCount w_k_size;
  BigCount binom_t_k;
  int k_max = 0;  // largest k with k <= t^(2/7 - eps/2)
};

/// Largest k with k^den <= t^num for num/den = 2/7 - eps/2.
int critical_k_cap(int t, const Rational& eps);
/// Scans k down from critical_k_cap for |W_k|^7 t > C(t,k)^7.
std::optional<CriticalK> select_critical_k(const PeelingResult& peeling, int t, const Rational& eps);

/// Smallest integer r >= 100 with (3r-1)/(r-1) (2/7 - eps/2) < 6/7 - eps.
int choose_r(const Rational& eps);
bool choose_r_condition(int r, const Rational& eps);

struct GoodTuple {
  std::vector<std::size_t> indices;  // into the searched layer, ascending
  std::vector<PartialPermutation> sets;
  PartialPermutation U;
  std::vector<Cell> V;  // union minus U; not always a partial permutation
  std::vector<int> profile_a;  // profile_a[i-1] = cells in exactly i sets
  std::size_t min_intersection = 0;
  bool achieved_min = false;
  std::uint64_t nodes = 0;
};

/// Minimizes |A_1 ∩ ... ∩ A_r| over r distinct members of a (t+k)-uniform
/// t-intersecting layer, by branch and bound. Ties keep the lexicographically
/// first index tuple.
GoodTuple good_tuple_search(const Family& w, int t, int k, int r);

/// A_i = U ∪ (V minus the i-th k-block), laid out on the diagonal.
/// Needs t >= (r-2)k and n >= t+2k.
Family symmetric_tuple_family(int n, int t, int k, int r);

struct MemberProfile {
  std::vector<int> profile_b;  // profile_b[i-1]
  int x = 0;
  int m = 0;
  bool bound_b_1 = true;    // sum i b_i >= r t
  bool bound_b_2 = true;    // b_{r-1} + r b_r >= r t - r(r-2)k + r x
  bool bound_m = true;      // m >= x/(r-1)
  bool bound_sum_b = true;  // sum b_i >= t + k - (x+m)/(r-1)
  bool ok() const { return bound_b_1 && bound_b_2 && bound_m && bound_sum_b; }
  std::vector<std::string> failures() const;
};

MemberProfile member_profile(const PartialPermutation& b, const GoodTuple& gt, int t, int k);

struct GjBound {
  BigCount value;       // the summation bound
  double cap_a = 0;     // t^-0.1 2^(j-k) C(t,j)
  Rational ratio_to_binom;  // value / C(t,j)
};

/// sum_{x=(r-2)k}^{(r-1)j} C(t-(r-2)k, t-x) C(rk, ceil(rx/(r-1))) k^(j - ceil(x/(r-1)))
GjBound bound_G_j(int t, int k, int j, int r);
GjBound bound_W_k_refined(int t, int k, int r);

struct ResidualReport {
  std::size_t t_k_prime = 0;  // |T_k'|
  BigCount numerator;         // |F[T_k']|
  BigCount denominator;       // max_j |A_j|
  Rational ratio;
};

/// T_k' = T_k minus the (t+k)-subsets of A_1 ∪ ... ∪ A_r.
ResidualReport residual_T_k_report(const PeelingResult& peeling, int k, const GoodTuple& gt, const Family& probe);

}  // namespace tperm
