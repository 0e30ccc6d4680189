#include "tperm/counting.hpp"
#include "tperm/errors.hpp"
#include "tperm/search.hpp"

#include <set>

namespace tperm {

namespace {

struct TSearch {
  const Family& f;
  int n, need, m;
  std::uint64_t budget;
  std::uint64_t nodes = 0;
  std::set<SubsetKey> seen;

  std::optional<PartialPermutation> dfs(const PartialPermutation& T) {
    if (!seen.insert(T.key()).second) return std::nullopt;
    if (++nodes > budget) throw BudgetExceeded("A_k structure search ran out of nodes");
    const int slots = m - static_cast<int>(T.size());
    int worst = 0;
    const PartialPermutation* target = nullptr;
    for (const auto& rho : f) {
      const int deficit = need - static_cast<int>(intersection_size(rho, T));
      if (deficit > worst) {
        worst = deficit;
        target = &rho;
      }
    }
    if (!target) return pad(T);
    if (worst > slots) return std::nullopt;
    std::vector<bool> row_used(n + 1), col_used(n + 1);
    for (const Cell& c : T.cells()) row_used[c.row] = col_used[c.col] = true;
    for (const Cell& c : target->cells()) {
      if (row_used[c.row] || col_used[c.col]) continue;
      if (auto hit = dfs(T.with(c))) return hit;
    }
    return std::nullopt;
  }

  PartialPermutation pad(PartialPermutation T) const {
    std::vector<bool> row_used(n + 1), col_used(n + 1);
    for (const Cell& c : T.cells()) row_used[c.row] = col_used[c.col] = true;
    for (int r = 1; r <= n && static_cast<int>(T.size()) < m; ++r) {
      if (row_used[r]) continue;
      for (int c = 1; c <= n; ++c)
        if (!col_used[c]) {
          T = T.with({r, c});
          col_used[c] = true;
          break;
        }
    }
    return T;
  }
};

std::vector<int> inverse(const std::vector<int>& img) {
  std::vector<int> inv(img.size());
  for (std::size_t i = 0; i < img.size(); ++i) inv[img[i] - 1] = static_cast<int>(i) + 1;
  return inv;
}

AkMatch witnesses_from_T(int n, int k, const PartialPermutation& T) {
  const int m = static_cast<int>(T.size());
  std::vector<int> tau(n, 0), sigma(n, 0);
  std::vector<bool> row_used(n + 1), col_used(n + 1);
  for (int i = 0; i < m; ++i) {
    const Cell& c = T.cells()[i];
    tau[c.row - 1] = i + 1;
    sigma[i] = c.col;
    row_used[c.row] = col_used[c.col] = true;
  }
  int next = m + 1;
  for (int r = 1; r <= n; ++r)
    if (!row_used[r]) tau[r - 1] = next++;
  int slot = m;
  for (int c = 1; c <= n; ++c)
    if (!col_used[c]) sigma[slot++] = c;
  return AkMatch{k, PartialPermutation::from_images(sigma), PartialPermutation::from_images(tau), T};
}

}  // namespace

std::optional<AkMatch> detect_Ak_structure(const Family& f, int n, int t, std::uint64_t node_budget) {
  if (f.empty()) throw ValidationError("detect_Ak_structure needs a nonempty family");
  if (t < 0 || t > n) throw ValidationError("need 0 <= t <= n");
  for (const auto& p : f)
    if (p.n() != n || !p.is_permutation()) throw ValidationError("members must be full permutations of [n]");
  std::uint64_t used = 0;
  for (int k = 0; t + 2 * k <= n; ++k) {
    TSearch s{f, n, t + k, t + 2 * k, node_budget - used, 0, {}};
    auto T = s.dfs(PartialPermutation::empty(n));
    used += s.nodes;
    if (T) {
      AkMatch m = witnesses_from_T(n, k, *T);
      if (!verify_Ak_match(f, t, m)) throw InvariantViolation("A_k witnesses failed verification");
      return m;
    }
  }
  return std::nullopt;
}

bool verify_Ak_match(const Family& f, int t, const AkMatch& m) {
  const auto sigma_inv = inverse(m.sigma.images());
  const auto tau_inv = inverse(m.tau.images());
  for (const auto& rho : f) {
    const auto r = rho.images();
    std::vector<int> pi(r.size());
    for (std::size_t x = 0; x < r.size(); ++x) pi[x] = sigma_inv[r[tau_inv[x] - 1] - 1];
    if (!in_Ak(PartialPermutation::from_images(pi), t, m.k)) return false;
  }
  return true;
}

ConflictReport conflicting_count(const PartialPermutation& sigma, const PartialPermutation& T, int t, int k, int cap) {
  const int n = sigma.n();
  if (!sigma.is_permutation()) throw ValidationError("sigma must be a full permutation");
  if (T.n() != n) throw ValidationError("T and sigma live on different grids");
  if (t < 1 || k < 0 || static_cast<int>(T.size()) != t + 2 * k)
    throw ValidationError("need t >= 1, k >= 0 and |T| = t+2k");
  if (n > cap) throw BudgetExceeded("conflicting_count refused above n=" + std::to_string(cap));

  ConflictReport rep;
  const PartialPermutation X = sigma.intersected(T);
  const int x = static_cast<int>(X.size());
  rep.sigma_in_Ak = x >= t + k;
  rep.bound_applies = !rep.sigma_in_Ak;
  rep.product_bound = binomial(t, k) * derangement_count(n - t - k);
  for (const auto& pi : all_permutations(n)) {
    const PartialPermutation B = pi.intersected(T);
    const int b = static_cast<int>(B.size());
    if (b < t + k) continue;
    const PartialPermutation A = pi.intersected(sigma);
    const int a = static_cast<int>(A.size());
    if (a > t - 1) continue;
    rep.count += 1;
    // Pairs (Y, pi) from the derangement construction: Y a (t+k)-subset of
    // pi ∩ T containing every agreement of pi with sigma.
    if (!B.contains_all(A)) continue;
    const BigCount ys = binomial(b - a, t + k - a);
    rep.construction_pairs += ys;
    if (ys > 0) rep.construction_distinct += 1;
  }
  rep.bound_holds = !rep.bound_applies || rep.count >= rep.product_bound;
  return rep;
}

}  // namespace tperm
