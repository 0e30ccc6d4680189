#include "tperm/counting.hpp"
#include "tperm/errors.hpp"
#include "tperm/search.hpp"

#include <chrono>

namespace tperm {

namespace {

struct BudgetHit {};

// Bitset branch and bound in the style of BBMC: greedy sequential colouring
// of the candidate set gives the bound, vertices are expanded from the
// highest colour class down.
class CliqueSearch {
 public:
  CliqueSearch(const AgreementGraph& g, std::uint64_t budget) : g_(g), k_(g.kernels()), budget_(budget) {}

  std::size_t best = 0;
  std::vector<std::size_t> best_clique;
  std::uint64_t nodes = 0;

  // Enumeration mode: collect cliques of exactly `target` vertices.
  bool enumerate = false;
  std::size_t target = 0;
  std::size_t cap = 0;
  std::vector<std::vector<std::size_t>> found;
  bool truncated = false;

  void run() {
    std::vector<std::uint64_t> all(g_.words(), 0);
    for (std::size_t v = 0; v < g_.size(); ++v) all[v / 64] |= std::uint64_t{1} << (v % 64);
    std::vector<std::size_t> clique;
    if (enumerate && target == 0) {
      found.push_back({});
      return;
    }
    expand(clique, all);
  }

 private:
  const AgreementGraph& g_;
  const simd::KernelTable& k_;
  std::uint64_t budget_;

  static bool take_first(const std::vector<std::uint64_t>& s, std::size_t& v) {
    for (std::size_t w = 0; w < s.size(); ++w)
      if (s[w]) {
        v = w * 64 + static_cast<std::size_t>(__builtin_ctzll(s[w]));
        return true;
      }
    return false;
  }

  bool promising(std::size_t csize, std::size_t color) const {
    return enumerate ? csize + color >= target : csize + color > best;
  }

  void expand(std::vector<std::size_t>& clique, std::vector<std::uint64_t>& P) {
    if (++nodes > budget_) throw BudgetHit{};
    const std::size_t W = g_.words();
    std::vector<std::size_t> order, colors;
    std::vector<std::uint64_t> Q = P, Qc(W);
    std::size_t color = 0, v;
    while (take_first(Q, v)) {
      ++color;
      Qc = Q;
      while (take_first(Qc, v)) {
        order.push_back(v);
        colors.push_back(color);
        Q[v / 64] &= ~(std::uint64_t{1} << (v % 64));
        Qc[v / 64] &= ~(std::uint64_t{1} << (v % 64));
        k_.andnot_inplace(Qc.data(), g_.row(v), W);
      }
    }
    std::vector<std::uint64_t> next(W);
    for (std::size_t i = order.size(); i-- > 0;) {
      if (!promising(clique.size(), colors[i])) return;
      const std::size_t u = order[i];
      clique.push_back(u);
      const bool any = k_.and_into(next.data(), P.data(), g_.row(u), W);
      if (!any) {
        if (enumerate) {
          if (clique.size() == target) {
            if (found.size() >= cap) {
              truncated = true;
              throw BudgetHit{};
            }
            found.push_back(clique);
          }
        } else if (clique.size() > best) {
          best = clique.size();
          best_clique = clique;
        }
      } else {
        std::vector<std::uint64_t> sub = next;
        expand(clique, sub);
      }
      clique.pop_back();
      P[u / 64] &= ~(std::uint64_t{1} << (u % 64));
      if (truncated) return;
    }
  }
};

Family clique_family(const AgreementGraph& g, int t, const std::vector<std::size_t>& clique) {
  std::vector<PartialPermutation> members{PartialPermutation::identity(g.n())};
  for (std::size_t v : clique) members.push_back(g.permutation(v));
  return Family(g.n(), t, std::move(members));
}

}  // namespace

ExtremalResult max_t_intersecting(int n, int t, const MaxFamilyOptions& opts) {
  if (n < 1 || t < 1 || t > n) throw ValidationError("need 1 <= t <= n");
  if (n > opts.cap) throw BudgetExceeded("exact search refused above n=" + std::to_string(opts.cap));
  const auto start = std::chrono::steady_clock::now();
  const simd::KernelTable& kernels = opts.kernels ? *opts.kernels : simd::active_kernels();

  ExtremalResult res;
  res.n = n;
  res.t = t;
  AkMax best_ak = max_ak_size(n, t);
  res.conjecture_value = best_ak.size;
  res.conjecture_k = best_ak.k;

  AgreementGraph g(n, t, kernels);
  CliqueSearch cs(g, opts.node_budget);
  // The identity is implicit, so A_k contributes |A_k| - 1 vertices.
  cs.best = to_u64(best_ak.size) - 1;
  try {
    cs.run();
  } catch (const BudgetHit&) {
    res.optimal = false;
  }
  res.nodes = cs.nodes;
  res.max_size = static_cast<unsigned long>(cs.best + 1);
  if (cs.best_clique.empty() && cs.best + 1 == to_u64(best_ak.size)) {
    res.witness = Family(n, t, enumerate_Ak(n, t, best_ak.k, n));
  } else {
    res.witness = clique_family(g, t, cs.best_clique);
  }
  if (!res.witness.is_t_intersecting(t) || res.witness.size() != cs.best + 1)
    throw InvariantViolation("clique witness failed verification");
  try {
    res.matched_Ak = detect_Ak_structure(res.witness, n, t);
  } catch (const BudgetExceeded&) {
  }

  if (opts.all_optima && res.optimal) {
    CliqueSearch en(g, opts.node_budget);
    en.enumerate = true;
    en.target = cs.best;
    en.cap = opts.optima_cap;
    try {
      en.run();
    } catch (const BudgetHit&) {
      if (!en.truncated) res.optimal = false;
    }
    res.optima_truncated = en.truncated;
    res.nodes += en.nodes;
    for (const auto& c : en.found) res.optima.push_back(clique_family(g, t, c));
  }
  res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return res;
}

}  // namespace tperm
