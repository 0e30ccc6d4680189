#include "tperm/peeling.hpp"

#include "tperm/errors.hpp"
#include "tperm/rng.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <unordered_set>

namespace tperm {

std::string to_string(SimplifyEdit::Kind k) {
  return k == SimplifyEdit::Kind::kRemoveSuperset ? "remove_superset" : "shrink";
}

namespace {

struct Simplifier {
  int t;
  int stage;
  std::vector<PartialPermutation> cur;
  std::vector<SimplifyEdit> edits;
  std::optional<Rng> rng;

  // Rule 1: drop every member that contains another one, largest first.
  // Keeping the subset means no covered set is ever lost.
  void remove_supersets() {
    std::vector<std::size_t> order(cur.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return size_lex_less(cur[b], cur[a]); });
    std::vector<char> dead(cur.size(), 0);
    for (std::size_t i : order) {
      for (std::size_t j = 0; j < cur.size(); ++j) {
        if (j == i || dead[j]) continue;
        if (cur[i].contains_all(cur[j])) {
          dead[i] = 1;
          edits.push_back({SimplifyEdit::Kind::kRemoveSuperset, cur[i], std::nullopt, cur[j], stage});
          break;
        }
      }
    }
    std::vector<PartialPermutation> keep;
    for (std::size_t i = 0; i < cur.size(); ++i)
      if (!dead[i]) keep.push_back(std::move(cur[i]));
    cur = std::move(keep);
  }

  bool shrinkable(std::size_t i, const PartialPermutation& x) const {
    if (x.size() < static_cast<std::size_t>(t)) return false;
    for (std::size_t j = 0; j < cur.size(); ++j)
      if (j != i && intersection_size(x, cur[j]) < static_cast<std::size_t>(t)) return false;
    return true;
  }

  // Rule 2: one successful single-cell shrink, or false at the fixpoint.
  bool shrink_once() {
    std::vector<std::size_t> order(cur.size());
    std::iota(order.begin(), order.end(), 0);
    if (rng) {
      rng->shuffle(order);
    } else {
      std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (cur[a].size() != cur[b].size()) return cur[a].size() > cur[b].size();
        return cur[a] < cur[b];
      });
    }
    for (std::size_t i : order) {
      std::vector<Cell> cells(cur[i].cells().rbegin(), cur[i].cells().rend());
      if (rng) rng->shuffle(cells);
      for (const Cell& c : cells) {
        PartialPermutation x = cur[i].without(c);
        if (!shrinkable(i, x)) continue;
        edits.push_back({SimplifyEdit::Kind::kShrink, cur[i], x, std::nullopt, stage});
        cur[i] = std::move(x);
        return true;
      }
    }
    return false;
  }
};

}  // namespace

Simplified simplify_logged(const Family& s, int t, const SimplifyOptions& opts) {
  if (!s.is_t_intersecting(t)) throw ValidationError("simplify: input is not " + std::to_string(t) + "-intersecting");
  Simplifier sm{t, opts.stage, s.members(), {}, std::nullopt};
  if (opts.random_order_seed) sm.rng.emplace(*opts.random_order_seed);
  sm.remove_supersets();
  while (sm.shrink_once()) sm.remove_supersets();
  return {Family(s.n(), t, std::move(sm.cur)), std::move(sm.edits)};
}

Family simplify(const Family& s, int t) { return simplify_logged(s, t).family; }

SimplifiedCheck verify_simplified(const Family& s, int t, std::size_t exhaustive_cap) {
  SimplifiedCheck out;
  const auto& m = s.members();
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j) {
      if (i == j) continue;
      if (m[j].contains_all(m[i])) out.antichain = false;
      if (i < j && intersection_size(m[i], m[j]) < static_cast<std::size_t>(t)) out.t_intersecting = false;
    }
  for (const auto& S : m) {
    const std::size_t sz = S.size();
    // For each member T, the bits of S lying in T.
    std::vector<std::uint64_t> in_T;
    for (const auto& T : m) {
      std::uint64_t mask = 0;
      for (std::size_t b = 0; b < sz && b < 64; ++b)
        if (T.contains(S.cells()[b])) mask |= std::uint64_t{1} << b;
      in_T.push_back(mask);
    }
    auto witnessed = [&](std::uint64_t x) {
      for (std::uint64_t mt : in_T)
        if (std::popcount(x & mt) <= t - 1) return true;
      return false;
    };
    auto fail = [&](std::uint64_t x) {
      out.maximality = false;
      out.witness_member = S;
      std::vector<Cell> cells;
      for (std::size_t b = 0; b < sz; ++b)
        if (x >> b & 1) cells.push_back(S.cells()[b]);
      out.witness_subset = PartialPermutation(S.n(), std::move(cells));
    };
    if (sz >= 64) throw BudgetExceeded("member too large for property (c) check");
    const std::uint64_t full = (std::uint64_t{1} << sz) - 1;
    if (sz <= exhaustive_cap) {
      for (std::uint64_t x = 0; x < full; ++x)
        if (!witnessed(x)) {
          fail(x);
          return out;
        }
    } else {
      out.exhaustive = false;
      for (std::size_t b = 0; b < sz; ++b)
        if (!witnessed(full & ~(std::uint64_t{1} << b))) {
          fail(full & ~(std::uint64_t{1} << b));
          return out;
        }
    }
  }
  return out;
}

PeelingResult peel(const Family& s, int t, int q) {
  if (q < t) throw ValidationError("peel needs q >= t");
  for (std::size_t i = 0; i < s.size(); ++i)
    if (s[i].size() < static_cast<std::size_t>(t) || s[i].size() > static_cast<std::size_t>(q))
      throw ValidationError("member " + std::to_string(i) + " has size " + std::to_string(s[i].size()) +
                            " outside [" + std::to_string(t) + ", " + std::to_string(q) + "]");
  PeelingResult out;
  out.t = t;
  out.q = q;
  SimplifyOptions opts;
  opts.stage = q - t;
  Simplified top = simplify_logged(s, t, opts);
  out.provenance = top.edits;
  out.T[q - t] = top.family;
  for (int k = q - t; k >= 1; --k) {
    const Family& Tk = out.T.at(k);
    std::vector<PartialPermutation> w, rest;
    for (const auto& m : Tk) (m.size() == static_cast<std::size_t>(t + k) ? w : rest).push_back(m);
    out.W[k] = Family::trusted(s.n(), t, std::move(w));
    opts.stage = k - 1;
    Simplified next = simplify_logged(Family::trusted(s.n(), t, std::move(rest)), t, opts);
    out.provenance.insert(out.provenance.end(), next.edits.begin(), next.edits.end());
    out.T[k - 1] = next.family;
  }
  std::vector<PartialPermutation> w0;
  for (const auto& m : out.T.at(0))
    if (m.size() == static_cast<std::size_t>(t)) w0.push_back(m);
  out.W[0] = Family::trusted(s.n(), t, std::move(w0));
  return out;
}

CoverageCheck check_coverage(const PeelingResult& p, const Family& probe, int k) {
  if (k < 1 || k > p.q - p.t) throw ValidationError("coverage check needs 1 <= k <= q-t");
  CoverageCheck out;
  out.k = k;
  Family lhs = probe.select_many(p.T.at(k));
  std::unordered_set<SubsetKey> left, right;
  for (const auto& m : lhs) left.insert(m.key());
  for (const auto& m : probe.select_many(p.T.at(k - 1))) right.insert(m.key());
  for (const auto& m : probe.select_many(p.W.at(k))) right.insert(m.key());
  for (const auto& m : lhs)
    if (!right.count(m.key())) {
      out.contained = false;
      out.equal = false;
      out.witness = m;
      return out;
    }
  if (left.size() != right.size()) {
    out.equal = false;
    for (const auto& m : probe)
      if (right.count(m.key()) && !left.count(m.key())) {
        out.witness = m;
        break;
      }
  }
  return out;
}

DegreeReport check_W_k_degree_bound(const Family& w, int t, int k, const std::vector<PartialPermutation>& probes) {
  if (k < 1) throw HypothesisError("degree bound is stated for k >= 1");
  DegreeReport out;
  out.t = t;
  out.k = k;
  for (const auto& X : probes) {
    ++out.probes;
    const long e = static_cast<long>(t + k) - static_cast<long>(X.size());
    if (e < 0) continue;  // no member of size t+k contains X
    std::uint64_t count = 0;
    for (const auto& m : w)
      if (m.contains_all(X)) ++count;
    BigCount b = power(BigCount(k), static_cast<unsigned long>(e));
    BigCount bs = power(BigCount(k + 1), static_cast<unsigned long>(e));
    if (BigCount(static_cast<unsigned long>(count)) > b) out.violations.push_back({X, count, b});
    if (BigCount(static_cast<unsigned long>(count)) > bs) out.violations_shifted.push_back({X, count, bs});
  }
  return out;
}

BigCount rough_bound_W_k(int t, int k, bool shifted) {
  if (t < 0 || k < 0) throw HypothesisError("rough bound needs t, k >= 0");
  const BigCount base = shifted ? k + 1 : k;
  BigCount total = 0;
  for (int j = 0; j <= k; ++j) {
    BigCount ck = binomial(k, j);
    total += binomial(t, j) * ck * ck * power(base, static_cast<unsigned long>(k - j));
  }
  return total;
}

bool has_exact_t_pair(const Family& f, int t) {
  for (std::size_t i = 0; i < f.size(); ++i)
    for (std::size_t j = i + 1; j < f.size(); ++j)
      if (intersection_size(f[i], f[j]) == static_cast<std::size_t>(t)) return true;
  return false;
}

Rational bound_ratio_f(int t, int k, int j) {
  if (j < 0 || j >= std::min(t, k)) throw HypothesisError("ratio needs 0 <= j < min(t,k)");
  Rational r(BigCount(j + 1) * (j + 1) * (j + 1) * k, BigCount(t - j) * (k - j) * (k - j));
  r.canonicalize();
  return r;
}

int j0_argmax_4(int t, int k) {
  if (t < 0 || k < 0) throw HypothesisError("need t, k >= 0");
  int best_j = 0;
  BigCount best = -1;
  for (int j = 0; j <= std::min(t, k); ++j) {
    BigCount ck = binomial(k, j);
    BigCount f = binomial(t, j) * ck * ck * power(BigCount(k), static_cast<unsigned long>(k - j));
    if (f > best) {
      best = f;
      best_j = j;
    }
  }
  return best_j;
}

Rational cor_bound_W_k(int t, int k) {
  if (k < 1) throw HypothesisError("power bound needs k >= 1");
  Rational tk(t, k);
  tk.canonicalize();
  Rational m = std::max(Rational(k), tk);
  return power(200 * m, k);
}

}  // namespace tperm
