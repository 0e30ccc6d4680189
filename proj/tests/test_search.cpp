#include "fixtures.hpp"
#include "oracles.hpp"
#include "tperm/counting.hpp"
#include "tperm/errors.hpp"
#include "tperm/search.hpp"

#include <doctest.h>

#include <bitset>
#include <cstdio>
#include <set>
#include <string>

using namespace tperm;

namespace {

using Img = std::vector<int>;  // 1-based images

Img compose(const Img& a, const Img& b) {  // a after b
  Img r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[b[i] - 1];
  return r;
}

Img inverse(const Img& a) {
  Img r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[a[i] - 1] = static_cast<int>(i) + 1;
  return r;
}

Img random_img(std::mt19937_64& g, int n) {
  Img p(n);
  std::iota(p.begin(), p.end(), 1);
  std::shuffle(p.begin(), p.end(), g);
  return p;
}

// rho in sigma A_k tau, tested on pi = sigma^-1 rho tau^-1 against the
// standard A_k (first t+2k points).
bool in_translate(const Img& rho, const Img& sigma, const Img& tau, int t, int k) {
  return oracle::in_Ak(compose(inverse(sigma), compose(rho, inverse(tau))), t, k);
}

// Members of perms meeting T in at least t+k cells and sigma in at most t-1.
std::size_t conflicting_oracle(const Img& sigma, const oracle::CellSet& T, int t, int k) {
  std::size_t c = 0;
  for (const auto& p : oracle::permutations(static_cast<int>(sigma.size()))) {
    int inT = 0;
    for (std::size_t i = 0; i < p.size(); ++i) inT += T.count({static_cast<int>(i) + 1, p[i]});
    if (inT >= t + k && oracle::agreements(p, sigma) <= t - 1) ++c;
  }
  return c;
}

using Mask = std::bitset<120>;

// Every translate sigma A_k tau of Sigma_n (n <= 5) as a bitmask over the
// permutations in next_permutation order.
struct Translates {
  std::vector<Img> perms;
  std::vector<Mask> masks;
  Translates(int n, int t) : perms(oracle::permutations(n)) {
    std::set<std::string> seen;
    for (int k = 0; t + 2 * k <= n; ++k)
      for (const auto& s : perms)
        for (const auto& ta : perms) {
          Mask m;
          for (std::size_t i = 0; i < perms.size(); ++i) m[i] = in_translate(perms[i], s, ta, t, k);
          if (seen.insert(m.to_string()).second) masks.push_back(m);
        }
  }
  bool contained(const Mask& f) const {
    for (const auto& m : masks)
      if ((f & ~m).none()) return true;
    return false;
  }
};

// Largest t-intersecting family of Sigma_n in no translate of any A_k, by
// enumerating every clique containing the identity (index 0).
std::size_t largest_uncontained(int n, int t) {
  Translates tr(n, t);
  const std::size_t N = tr.perms.size();
  std::vector<std::size_t> nb;
  for (std::size_t v = 1; v < N; ++v)
    if (oracle::agreements(tr.perms[0], tr.perms[v]) >= t) nb.push_back(v);
  std::size_t best = 0;
  Mask cur;
  cur.set(0);
  auto rec = [&](auto&& self, std::size_t from, std::size_t size) -> void {
    if (size > best && !tr.contained(cur)) best = size;
    for (std::size_t i = from; i < nb.size(); ++i) {
      bool ok = true;
      for (std::size_t u = 0; u < N && ok; ++u)
        if (cur[u]) ok = oracle::agreements(tr.perms[u], tr.perms[nb[i]]) >= t;
      if (!ok) continue;
      cur.set(nb[i]);
      self(self, i + 1, size + 1);
      cur.reset(nb[i]);
    }
  };
  rec(rec, 0, 1);
  return best;
}

}  // namespace

TEST_CASE("max_t_intersecting small values") {
  CHECK(max_t_intersecting(3, 1).max_size == 2);
  CHECK(max_t_intersecting(4, 3).max_size == 1);
  CHECK(max_t_intersecting(4, 1).max_size == 6);
  CHECK_THROWS_AS(max_t_intersecting(4, 0), ValidationError);
  CHECK_THROWS_AS(max_t_intersecting(9, 2), BudgetExceeded);
}

TEST_CASE("max_t_intersecting against the unpruned oracle") {
  for (int n = 1; n <= 4; ++n)
    for (int t = 1; t <= n; ++t) {
      INFO("n=" << n << " t=" << t);
      ExtremalResult r = max_t_intersecting(n, t);
      CHECK(r.optimal);
      CHECK(r.max_size == oracle::max_t_intersecting(n, t));
      CHECK(r.max_size >= max_ak_size(n, t).size);
      CHECK(r.witness.size() == r.max_size.get_ui());
      const auto w = fixture::cells(r.witness);
      for (const auto& a : w)
        for (const auto& b : w) CHECK(oracle::intersection(a, b) >= static_cast<std::size_t>(t));
    }
}

TEST_CASE("witness is t-intersecting up to n = 6") {
  for (int n = 5; n <= 6; ++n)
    for (int t = 1; t <= n; ++t) {
      ExtremalResult r = max_t_intersecting(n, t);
      const auto w = fixture::cells(r.witness);
      for (const auto& a : w)
        for (const auto& b : w) CHECK(oracle::intersection(a, b) >= static_cast<std::size_t>(t));
      CHECK(r.max_size >= r.conjecture_value);
    }
}

TEST_CASE("budget exhaustion flags a non-optimal result") {
  MaxFamilyOptions o;
  o.node_budget = 5;
  ExtremalResult r = max_t_intersecting(6, 1, o);
  CHECK_FALSE(r.optimal);
  CHECK(r.max_size >= r.conjecture_value);
  CHECK(r.witness.is_t_intersecting(1));
}

TEST_CASE("detect_Ak_structure examples") {
  Family a1(4, 1, enumerate_Ak(4, 1, 1));
  CHECK(a1.size() == 4);
  auto m = detect_Ak_structure(a1, 4, 1);
  REQUIRE(m.has_value());
  CHECK(m->k <= 1);
  CHECK(verify_Ak_match(a1, 1, *m));

  Family pair(4, 2, {PartialPermutation::identity(4), PartialPermutation::transposition(4, 1, 2)});
  auto m2 = detect_Ak_structure(pair, 4, 2);
  REQUIRE(m2.has_value());
  CHECK(m2->k == 0);
  CHECK(m2->T == PartialPermutation(4, {{3, 3}, {4, 4}}));

  // Two permutations of [5] sharing exactly the cells (1,1), (2,2).
  Family two(5, 2, {PartialPermutation::from_images({1, 2, 3, 4, 5}), PartialPermutation::from_images({1, 2, 4, 5, 3})});
  auto m3 = detect_Ak_structure(two, 5, 2);
  REQUIRE(m3.has_value());
  CHECK(m3->k == 0);
  CHECK(m3->T == PartialPermutation(5, {{1, 1}, {2, 2}}));
}

TEST_CASE("detect_Ak_structure recovers random translates") {
  std::mt19937_64 g(41);
  for (int it = 0; it < 60; ++it) {
    const int n = std::uniform_int_distribution<int>(3, 6)(g);
    const int t = std::uniform_int_distribution<int>(1, n - 1)(g);
    const int k = std::uniform_int_distribution<int>(0, (n - t) / 2)(g);
    const Img sigma = random_img(g, n), tau = random_img(g, n);
    std::vector<PartialPermutation> members;
    std::vector<Img> imgs;
    for (const auto& p : oracle::permutations(n))
      if (oracle::in_Ak(p, t, k)) {
        imgs.push_back(compose(sigma, compose(p, tau)));
        members.push_back(PartialPermutation::from_images(imgs.back()));
      }
    for (const auto& x : imgs) CHECK(in_translate(x, sigma, tau, t, k));
    Family f(n, t, members);
    INFO("n=" << n << " t=" << t << " k=" << k);
    auto m = detect_Ak_structure(f, n, t);
    REQUIRE(m.has_value());
    CHECK(m->k <= k);
    CHECK(m->T.size() == static_cast<std::size_t>(t + 2 * m->k));
    const Img s = m->sigma.images(), ta = m->tau.images();
    for (const auto& x : imgs) CHECK(in_translate(x, s, ta, t, m->k));
  }
}

TEST_CASE("detect_Ak_structure agrees with brute containment") {
  for (auto [n, t] : {std::pair{4, 1}, std::pair{4, 2}, std::pair{5, 2}}) {
    Translates tr(n, t);
    std::mt19937_64 g(5 + n + t);
    for (int it = 0; it < 40; ++it) {
      std::vector<std::size_t> order(tr.perms.size());
      std::iota(order.begin(), order.end(), 0);
      std::shuffle(order.begin(), order.end(), g);
      Mask f;
      std::vector<PartialPermutation> members;
      const std::size_t want = std::uniform_int_distribution<std::size_t>(2, 6)(g);
      for (std::size_t v : order) {
        bool ok = true;
        for (std::size_t u = 0; u < tr.perms.size(); ++u)
          if (f[u]) ok = ok && oracle::agreements(tr.perms[u], tr.perms[v]) >= t;
        if (!ok) continue;
        f.set(v);
        members.push_back(PartialPermutation::from_images(tr.perms[v]));
        if (members.size() == want) break;
      }
      auto m = detect_Ak_structure(Family(n, t, members), n, t);
      CHECK(m.has_value() == tr.contained(f));
      if (m) CHECK(verify_Ak_match(Family(n, t, members), t, *m));
    }
  }
}

TEST_CASE("conflicting_count") {
  PartialPermutation T(4, {{1, 1}, {2, 2}, {3, 3}});
  PartialPermutation cyc = PartialPermutation::from_images({2, 3, 4, 1});
  ConflictReport r = conflicting_count(cyc, T, 1, 1);
  // A_1 here is {e, (34), (24), (14)}; the 4-cycle meets (34) and (14).
  CHECK(r.count == conflicting_oracle({2, 3, 4, 1}, fixture::cells(T), 1, 1));
  CHECK(r.count == 2);
  CHECK(r.bound_applies);
  CHECK(r.product_bound == 1);  // C(1,1) D(2)

  ConflictReport self = conflicting_count(PartialPermutation::identity(4), T, 1, 1);
  CHECK(self.sigma_in_Ak);
  CHECK_FALSE(self.bound_applies);
  CHECK(self.count == 0);
}

TEST_CASE("conflicting_count matches enumeration and the product bound holds") {
  std::mt19937_64 g(8);
  std::size_t applied = 0;
  for (int n = 3; n <= 6; ++n)
    for (int t = 1; t < n; ++t)
      for (int k = 0; t + 2 * k <= n; ++k) {
        std::vector<Cell> tc;
        for (int i = 1; i <= t + 2 * k; ++i) tc.push_back({i, i});
        PartialPermutation T(n, tc);
        const auto Tset = fixture::cells(T);
        auto all = oracle::permutations(n);
        if (n == 6) {
          std::shuffle(all.begin(), all.end(), g);
          all.resize(40);
        }
        for (const auto& s : all) {
          ConflictReport r = conflicting_count(PartialPermutation::from_images(s), T, t, k);
          CHECK(r.count == conflicting_oracle(s, Tset, t, k));
          if (r.bound_applies) {
            ++applied;
            CHECK(r.count >= r.product_bound);
            CHECK(r.bound_holds);
          }
        }
      }
  CHECK(applied > 100);
}

TEST_CASE("verify_conjecture examples") {
  auto r41 = verify_conjecture(4, 1, 1);
  REQUIRE(r41.rows.size() == 1);
  CHECK(r41.rows[0].max_size == 6);
  CHECK(r41.rows[0].equal);
  CHECK(verify_conjecture(3, 3, 3).rows[0].max_size == 1);
  CHECK(verify_conjecture(5, 4, 4).rows[0].max_size == 1);
  auto r5 = verify_conjecture(5, 1, 5);
  CHECK(r5.all_equal());
  for (const auto& row : r5.rows) {
    CHECK(row.optimal);
    CHECK(row.matched_Ak.has_value());
    CHECK(row.optima_matched == row.optima);
  }
}

TEST_CASE("stability gap against exhaustive clique enumeration") {
  for (auto [n, t] : {std::pair{4, 1}, std::pair{4, 2}, std::pair{4, 3}, std::pair{5, 2}, std::pair{5, 3}}) {
    const std::size_t expect = largest_uncontained(n, t);
    StabilityReport s = stability_gap_report(n, t);
    std::printf("stability n=%d t=%d largest=%s ratio=%s oracle=%zu\n", n, t, s.largest_non_Ak.get_str().c_str(),
                to_string(s.ratio).c_str(), expect);
    INFO("n=" << n << " t=" << t);
    CHECK(s.optimal);
    CHECK(s.largest_non_Ak == expect);
    CHECK(s.ratio <= 1);
    CHECK(s.ratio == Rational(BigCount(expect)) / Rational(s.conjecture_value));
    if (s.largest_non_Ak > 0) {
      CHECK(s.witness.size() == expect);
      CHECK(s.witness.is_t_intersecting(t));
      CHECK_FALSE(detect_Ak_structure(s.witness, n, t).has_value());
    }
  }
}
