#include "tperm/analysis.hpp"

#include "tperm/counting.hpp"
#include "tperm/errors.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <set>
#include <unordered_set>

namespace tperm {

int critical_k_cap(int t, const Rational& eps) {
  if (t < 1) throw ValidationError("t must be positive");
  Rational a = Rational(2, 7) - eps / 2;
  a.canonicalize();
  const BigCount num = a.get_num(), den = a.get_den();
  const unsigned long d = to_u64(den);
  // k <= t^(num/den)  <=>  k^den * t^max(0,-num) <= t^max(0,num)
  const BigCount lhs_t = num < 0 ? power(BigCount(t), to_u64(-num)) : BigCount(1);
  const BigCount rhs = num > 0 ? power(BigCount(t), to_u64(num)) : BigCount(1);
  int k = 0;
  while (power(BigCount(k + 1), d) * lhs_t <= rhs) ++k;
  return k;
}

std::optional<CriticalK> select_critical_k(const PeelingResult& peeling, int t, const Rational& eps) {
  const int cap = critical_k_cap(t, eps);
  for (int k = cap; k >= 0; --k) {
    auto it = peeling.W.find(k);
    const std::size_t w = it == peeling.W.end() ? 0 : it->second.size();
    BigCount wk = static_cast<unsigned long>(w);
    BigCount c = binomial(t, k);
    // |W_k| > t^(-1/7) C(t,k)  <=>  |W_k|^7 t > C(t,k)^7
    if (power(wk, 7) * t > power(c, 7)) return CriticalK{k, true, wk, c, cap};
  }
  return std::nullopt;
}

bool choose_r_condition(int r, const Rational& eps) {
  Rational a = Rational(2, 7) - eps / 2;
  Rational lead(3 * r - 1, r - 1);
  lead.canonicalize();
  return lead * a < Rational(6, 7) - eps;
}

int choose_r(const Rational& eps) {
  if (eps <= 0 || eps >= Rational(1, 2)) throw HypothesisError("choose_r needs 0 < eps < 1/2");
  // The condition rearranges to r > 8/(7 eps) - 1.
  Rational bound = Rational(8) / (7 * eps) - 1;
  BigCount r = floor(bound) + 1;
  if (r < 100) r = 100;
  int out = static_cast<int>(to_u64(r));
  if (!choose_r_condition(out, eps) || (out > 100 && choose_r_condition(out - 1, eps)))
    throw InvariantViolation("choose_r closed form disagrees with the direct check");
  return out;
}

namespace {

using Bits = std::vector<std::uint64_t>;

std::size_t popcount(const Bits& b) {
  std::size_t c = 0;
  for (auto w : b) c += std::popcount(w);
  return c;
}

struct TupleSearch {
  const std::vector<Bits>& sets;
  int r;
  std::size_t floor_value;
  std::size_t words;
  std::size_t best = SIZE_MAX;
  std::vector<std::size_t> best_idx;
  std::vector<std::size_t> cur;
  std::uint64_t nodes = 0;
  std::size_t k;

  void run(std::size_t start, const Bits& inter) {
    ++nodes;
    const std::size_t d = cur.size();
    const std::size_t icount = popcount(inter);
    if (d == static_cast<std::size_t>(r)) {
      if (icount < best) {
        best = icount;
        best_idx = cur;
      }
      return;
    }
    if (best == floor_value) return;
    const std::size_t remaining = static_cast<std::size_t>(r) - d;
    if (d > 0) {
      // Each later member removes at most k cells of the running intersection.
      std::size_t lb = icount > k * remaining ? icount - k * remaining : 0;
      // Cells of I missed by some remaining candidate bound the loss too.
      Bits lost(words, 0);
      for (std::size_t j = start; j < sets.size(); ++j)
        for (std::size_t w = 0; w < words; ++w) lost[w] |= inter[w] & ~sets[j][w];
      std::size_t lb2 = icount - popcount(lost);
      lb = std::max({lb, lb2, floor_value});
      if (lb >= best) return;
    }
    Bits next(words);
    for (std::size_t j = start; j + remaining <= sets.size(); ++j) {
      for (std::size_t w = 0; w < words; ++w) next[w] = d == 0 ? sets[j][w] : inter[w] & sets[j][w];
      cur.push_back(j);
      run(j + 1, next);
      cur.pop_back();
      if (best == floor_value) return;
    }
  }
};

}  // namespace

GoodTuple good_tuple_search(const Family& w, int t, int k, int r) {
  if (r < 2) throw ValidationError("tuple arity must be at least 2");
  if (w.size() < static_cast<std::size_t>(r))
    throw ValidationError("layer has " + std::to_string(w.size()) + " members, fewer than r=" + std::to_string(r));
  for (std::size_t i = 0; i < w.size(); ++i)
    if (w[i].size() != static_cast<std::size_t>(t + k))
      throw ValidationError("member " + std::to_string(i) + " does not have size t+k");
  if (!w.is_t_intersecting(t)) throw ValidationError("layer is not t-intersecting");

  // Index the cells of the layer.
  std::map<Cell, std::size_t> index;
  for (const auto& m : w)
    for (const Cell& c : m.cells()) index.emplace(c, 0);
  std::vector<Cell> cells;
  for (auto& [c, i] : index) {
    i = cells.size();
    cells.push_back(c);
  }
  const std::size_t words = (cells.size() + 63) / 64;
  std::vector<Bits> sets;
  for (const auto& m : w) {
    Bits b(words, 0);
    for (const Cell& c : m.cells()) {
      std::size_t i = index[c];
      b[i / 64] |= std::uint64_t{1} << (i % 64);
    }
    sets.push_back(std::move(b));
  }
  const long L = static_cast<long>(t) - static_cast<long>(r - 2) * k;
  TupleSearch ts{sets, r, static_cast<std::size_t>(std::max(L, 0L)), words, SIZE_MAX, {}, {}, 0,
                 static_cast<std::size_t>(k)};
  ts.run(0, Bits(words, 0));

  GoodTuple gt;
  gt.nodes = ts.nodes;
  gt.indices = ts.best_idx;
  for (auto i : gt.indices) gt.sets.push_back(w[i]);
  gt.min_intersection = ts.best;
  if (static_cast<long>(ts.best) < L) throw InvariantViolation("r-wise intersection below t-(r-2)k");

  std::map<Cell, int> mult;
  for (const auto& s : gt.sets)
    for (const Cell& c : s.cells()) ++mult[c];
  std::vector<Cell> u, v;
  gt.profile_a.assign(r, 0);
  for (const auto& [c, m] : mult) {
    ++gt.profile_a[m - 1];
    (m == r ? u : v).push_back(c);
  }
  gt.U = PartialPermutation(w.n(), u);
  gt.V = std::move(v);
  gt.achieved_min = static_cast<long>(ts.best) == L;
  if (gt.achieved_min) {
    for (std::size_t i = 0; i < gt.sets.size(); ++i)
      for (std::size_t j = i + 1; j < gt.sets.size(); ++j)
        if (intersection_size(gt.sets[i], gt.sets[j]) != static_cast<std::size_t>(t))
          throw InvariantViolation("good tuple with a pairwise intersection other than t");
    for (const auto& [c, m] : mult)
      if (m < r - 1) throw InvariantViolation("good tuple cell with multiplicity below r-1");
    if (static_cast<long>(gt.U.size()) != L || gt.V.size() != static_cast<std::size_t>(r * k))
      throw InvariantViolation("good tuple with |U| != t-(r-2)k or |V| != rk");
  }
  return gt;
}

Family symmetric_tuple_family(int n, int t, int k, int r) {
  const int u = t - (r - 2) * k;
  if (u < 0) throw HypothesisError("symmetric tuple needs t >= (r-2)k");
  if (n < u + r * k) throw HypothesisError("symmetric tuple needs n >= t+2k");
  std::vector<PartialPermutation> out;
  for (int i = 0; i < r; ++i) {
    std::vector<Cell> cells;
    for (int c = 1; c <= u; ++c) cells.push_back({c, c});
    for (int b = 0; b < r; ++b) {
      if (b == i) continue;
      for (int c = 0; c < k; ++c) {
        int d = u + b * k + c + 1;
        cells.push_back({d, d});
      }
    }
    out.emplace_back(n, std::move(cells));
  }
  return Family(n, t, std::move(out));
}

std::vector<std::string> MemberProfile::failures() const {
  std::vector<std::string> f;
  if (!bound_b_1) f.push_back("bound_b_1");
  if (!bound_b_2) f.push_back("bound_b_2");
  if (!bound_m) f.push_back("bound_m");
  if (!bound_sum_b) f.push_back("bound_sum_b");
  return f;
}

MemberProfile member_profile(const PartialPermutation& b, const GoodTuple& gt, int t, int k) {
  if (!gt.achieved_min) throw HypothesisError("member_profile needs a tuple achieving the minimum");
  if (b.size() != static_cast<std::size_t>(t + k)) throw ValidationError("member is not in a (t+k)-layer");
  const int r = static_cast<int>(gt.sets.size());
  MemberProfile p;
  p.profile_b.assign(r, 0);
  for (const Cell& c : b.cells()) {
    int m = 0;
    for (const auto& s : gt.sets) m += s.contains(c);
    if (m > 0) ++p.profile_b[m - 1];
  }
  const long L = static_cast<long>(t) - static_cast<long>(r - 2) * k;
  const long a_r = gt.profile_a[r - 1];
  const long b_r = p.profile_b[r - 1];
  p.x = static_cast<int>(a_r - L);
  p.m = static_cast<int>(k - (a_r - b_r));
  long weighted = 0, sum = 0;
  for (int i = 1; i <= r; ++i) {
    weighted += static_cast<long>(i) * p.profile_b[i - 1];
    sum += p.profile_b[i - 1];
  }
  const long b_rm1 = r >= 2 ? p.profile_b[r - 2] : 0;
  p.bound_b_1 = weighted >= static_cast<long>(r) * t;
  p.bound_b_2 = b_rm1 + static_cast<long>(r) * b_r >=
                static_cast<long>(r) * t - static_cast<long>(r) * (r - 2) * k + static_cast<long>(r) * p.x;
  p.bound_m = static_cast<long>(r - 1) * p.m >= p.x;
  p.bound_sum_b = static_cast<long>(r - 1) * sum >= static_cast<long>(r - 1) * (t + k) - p.x - p.m;
  return p;
}

GjBound bound_G_j(int t, int k, int j, int r) {
  if (r < 2) throw HypothesisError("need r >= 2");
  if (j < 0 || j > k) throw HypothesisError("need 0 <= j <= k");
  if (static_cast<long>(r - 2) * k > t) throw HypothesisError("out of hypothesis: (r-2)k > t");
  GjBound g;
  const long u = static_cast<long>(t) - static_cast<long>(r - 2) * k;
  for (long x = static_cast<long>(r - 2) * k; x <= static_cast<long>(r - 1) * j; ++x) {
    const long c1 = (static_cast<long>(r) * x + r - 2) / (r - 1);  // ceil(rx/(r-1))
    const long c2 = (x + r - 2) / (r - 1);                          // ceil(x/(r-1))
    g.value += binomial(u, t - x) * binomial(static_cast<long>(r) * k, c1) *
               power(BigCount(k), static_cast<unsigned long>(j - c2));
  }
  BigCount ctj = binomial(t, j);
  g.cap_a = std::pow(static_cast<double>(t), -0.1) * std::ldexp(1.0, j - k) * ctj.get_d();
  g.ratio_to_binom = ctj == 0 ? Rational(0) : Rational(g.value, ctj);
  g.ratio_to_binom.canonicalize();
  return g;
}

GjBound bound_W_k_refined(int t, int k, int r) { return bound_G_j(t, k, k, r); }

ResidualReport residual_T_k_report(const PeelingResult& peeling, int k, const GoodTuple& gt, const Family& probe) {
  if (!gt.achieved_min) throw HypothesisError("residual report needs a tuple achieving the minimum");
  const int t = peeling.t;
  std::set<Cell> uni(gt.V.begin(), gt.V.end());
  uni.insert(gt.U.cells().begin(), gt.U.cells().end());
  std::vector<PartialPermutation> keep;
  for (const auto& m : peeling.T.at(k))
    if (!(m.size() == static_cast<std::size_t>(t + k) && std::all_of(m.cells().begin(), m.cells().end(), [&](const Cell& c) { return uni.count(c) > 0; })))
      keep.push_back(m);
  ResidualReport rep;
  rep.t_k_prime = keep.size();
  Family tkp = Family::trusted(probe.n(), t, std::move(keep));
  rep.numerator = static_cast<unsigned long>(probe.select_many(tkp).size());
  rep.denominator = max_ak_size(probe.n(), t).size;
  rep.ratio = Rational(rep.numerator, rep.denominator);
  rep.ratio.canonicalize();
  return rep;
}

}  // namespace tperm
