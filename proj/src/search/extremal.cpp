#include "tperm/counting.hpp"
#include "tperm/errors.hpp"
#include "tperm/search.hpp"

namespace tperm {

namespace {

struct BudgetHit {};

// Maximum clique subject to "identity plus clique is not inside any
// sigma A_k tau". Non-containment is upward closed, so once a node is
// free of every A_k copy the rest is an ordinary maximum clique search.
class StabilitySearch {
 public:
  StabilitySearch(const AgreementGraph& g, std::uint64_t budget) : g_(g), k_(g.kernels()), budget_(budget) {}

  std::size_t best = 0;
  bool found = false;
  std::vector<std::size_t> best_clique;
  std::uint64_t nodes = 0;

  void run() {
    std::vector<std::uint64_t> all(g_.words(), 0);
    for (std::size_t v = 0; v < g_.size(); ++v) all[v / 64] |= std::uint64_t{1} << (v % 64);
    std::vector<std::size_t> clique;
    expand(clique, all, false);
  }

 private:
  const AgreementGraph& g_;
  const simd::KernelTable& k_;
  std::uint64_t budget_;

  Family family(const std::vector<std::size_t>& clique) const {
    std::vector<PartialPermutation> members{PartialPermutation::identity(g_.n())};
    for (std::size_t v : clique) members.push_back(g_.permutation(v));
    return Family::trusted(g_.n(), g_.t(), std::move(members));
  }

  bool contained(const std::vector<std::size_t>& clique) const {
    return detect_Ak_structure(family(clique), g_.n(), g_.t()).has_value();
  }

  void expand(std::vector<std::size_t>& clique, std::vector<std::uint64_t>& P, bool free) {
    if (++nodes > budget_) throw BudgetHit{};
    const std::size_t W = g_.words();
    std::vector<std::size_t> order, colors;
    std::vector<std::uint64_t> Q = P, Qc(W);
    std::size_t color = 0;
    auto take = [&](std::vector<std::uint64_t>& s, std::size_t& v) {
      for (std::size_t w = 0; w < W; ++w)
        if (s[w]) {
          v = w * 64 + static_cast<std::size_t>(__builtin_ctzll(s[w]));
          return true;
        }
      return false;
    };
    std::size_t v;
    while (take(Q, v)) {
      ++color;
      Qc = Q;
      while (take(Qc, v)) {
        order.push_back(v);
        colors.push_back(color);
        Q[v / 64] &= ~(std::uint64_t{1} << (v % 64));
        Qc[v / 64] &= ~(std::uint64_t{1} << (v % 64));
        k_.andnot_inplace(Qc.data(), g_.row(v), W);
      }
    }
    std::vector<std::uint64_t> next(W);
    for (std::size_t i = order.size(); i-- > 0;) {
      if (found && clique.size() + colors[i] <= best) return;
      const std::size_t u = order[i];
      clique.push_back(u);
      const bool child_free = free || !contained(clique);
      const bool any = k_.and_into(next.data(), P.data(), g_.row(u), W);
      if (!any) {
        if (child_free && (!found || clique.size() > best)) {
          found = true;
          best = clique.size();
          best_clique = clique;
        }
      } else {
        std::vector<std::uint64_t> sub = next;
        expand(clique, sub, child_free);
      }
      clique.pop_back();
      P[u / 64] &= ~(std::uint64_t{1} << (u % 64));
    }
  }
};

}  // namespace

StabilityReport stability_gap_report(int n, int t, std::uint64_t node_budget) {
  if (n < 1 || t < 1 || t > n) throw ValidationError("need 1 <= t <= n");
  if (n > kExactCliqueCap) throw BudgetExceeded("stability search refused above n=" + std::to_string(kExactCliqueCap));
  StabilityReport rep;
  rep.n = n;
  rep.t = t;
  rep.conjecture_value = max_ak_size(n, t).size;
  AgreementGraph g(n, t);
  StabilitySearch s(g, node_budget);
  try {
    s.run();
  } catch (const BudgetHit&) {
    rep.optimal = false;
  }
  rep.nodes = s.nodes;
  if (s.found) {
    rep.largest_non_Ak = static_cast<unsigned long>(s.best + 1);
    std::vector<PartialPermutation> members{PartialPermutation::identity(n)};
    for (std::size_t v : s.best_clique) members.push_back(g.permutation(v));
    rep.witness = Family(n, t, std::move(members));
  } else {
    rep.witness = Family(n, t);
  }
  rep.ratio = Rational(rep.largest_non_Ak, rep.conjecture_value);
  rep.ratio.canonicalize();
  return rep;
}

bool ConjectureReport::all_equal() const {
  for (const auto& r : rows)
    if (!r.equal) return false;
  return true;
}

ConjectureReport verify_conjecture(int n, int t_min, int t_max, const MaxFamilyOptions& opts) {
  if (t_min < 1 || t_max > n || t_min > t_max) throw ValidationError("need 1 <= t_min <= t_max <= n");
  ConjectureReport rep;
  rep.n = n;
  for (int t = t_min; t <= t_max; ++t) {
    MaxFamilyOptions o = opts;
    o.all_optima = true;
    ExtremalResult er = max_t_intersecting(n, t, o);
    ConjectureRow row;
    row.t = t;
    row.max_size = er.max_size;
    row.conjecture_value = er.conjecture_value;
    row.conjecture_k = er.conjecture_k;
    row.equal = er.max_size == er.conjecture_value;
    row.optimal = er.optimal;
    row.nodes = er.nodes;
    row.matched_Ak = detect_Ak_structure(er.witness, n, t);
    row.optima = er.optima.size();
    row.optima_truncated = er.optima_truncated;
    for (const auto& fam : er.optima)
      if (detect_Ak_structure(fam, n, t)) ++row.optima_matched;
    row.witness = std::move(er.witness);
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

}  // namespace tperm
