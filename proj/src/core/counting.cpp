#include "tperm/counting.hpp"

#include "tperm/errors.hpp"

#include <string>

namespace tperm {

void check_ak_range(int n, int t, int k) {
  if (n < 1 || t < 1 || t > n) throw ValidationError("need 1 <= t <= n");
  if (k < 0 || k > (n - t) / 2)
    throw ValidationError("k=" + std::to_string(k) + " outside [0, " + std::to_string((n - t) / 2) + "]");
}

bool in_Ak(const PartialPermutation& pi, int t, int k) {
  int fixed = 0;
  for (const Cell& c : pi.cells())
    if (c.row <= t + 2 * k && c.row == c.col) ++fixed;
  return fixed >= t + k;
}

std::vector<PartialPermutation> enumerate_Ak(int n, int t, int k, int cap) {
  check_ak_range(n, t, k);
  if (n > cap) throw BudgetExceeded("enumeration of A_k refused above n=" + std::to_string(cap));
  std::vector<PartialPermutation> out;
  for (auto& p : all_permutations(n))
    if (in_Ak(p, t, k)) out.push_back(std::move(p));
  return out;
}

PartialPermutation ak_core(int n, int t, int k) {
  check_ak_range(n, t, k);
  std::vector<Cell> cells;
  for (int i = 1; i <= t + 2 * k; ++i) cells.push_back({i, i});
  return PartialPermutation(n, std::move(cells));
}

BigCount ak_size_exact(int n, int t, int k) {
  check_ak_range(n, t, k);
  // Count permutations whose fixed points inside [m] are exactly a given
  // j-set, then sum over j >= t+k.
  const int m = t + 2 * k;
  BigCount total = 0;
  for (int j = t + k; j <= m; ++j) {
    BigCount exact_j = 0;
    for (int i = 0; i <= m - j; ++i) {
      BigCount term = binomial(m - j, i) * factorial(n - j - i);
      if (i % 2) exact_j -= term;
      else exact_j += term;
    }
    total += binomial(m, j) * exact_j;
  }
  return total;
}

AkBounds ak_size_bounds(int n, int t, int k) {
  check_ak_range(n, t, k);
  AkBounds b;
  b.upper = binomial(t + 2 * k, k) * factorial(n - t - k);
  b.lower = binomial(t + 2 * k, t + k) * factorial(n - t - k);
  BigCount c = binomial(t + 2 * k, t + k + 1);
  if (c != 0) b.lower -= (t + k + 1) * c * factorial(n - t - k - 1);
  return b;
}

AkMax max_ak_size(int n, int t) {
  AkMax best{0, ak_size_exact(n, t, 0)};
  for (int k = 1; k <= (n - t) / 2; ++k) {
    BigCount s = ak_size_exact(n, t, k);
    if (s > best.size) best = {k, s};
  }
  return best;
}

BigCount derangement_count(int m) {
  if (m < 0) throw ValidationError("derangement_count of a negative number");
  BigCount total = 0;
  for (int j = 0; j <= m; ++j) {
    // m!/j! with alternating sign.
    BigCount term = factorial(m) / factorial(j);
    if (j % 2) total -= term;
    else total += term;
  }
  return total;
}

Verdict derangement_lower_bound_check(int m) {
  BigCount d = derangement_count(m);
  BigCount mf = factorial(m);
  return refine([&](unsigned bits) {
    Enclosure e = e_enclosure(bits / 2);
    // m!/e - 1 <= m!/e.lo - 1
    Enclosure rhs = sub(scale(reciprocal_pos(e), Rational(mf)), Enclosure::exact(1));
    return less_equal(rhs, Enclosure::exact(Rational(d)));
  });
}

}  // namespace tperm
