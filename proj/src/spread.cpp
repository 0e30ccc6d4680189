#include "tperm/spread.hpp"

#include "tperm/errors.hpp"
#include "tperm/interval.hpp"
#include "tperm/rng.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <set>
#include <thread>

namespace tperm {

namespace {

void check_budget(const Family& f, std::uint64_t budget) {
  std::uint64_t total = 0;
  for (const auto& m : f) {
    if (m.size() >= 63) throw BudgetExceeded("member with " + std::to_string(m.size()) + " cells");
    total += std::uint64_t{1} << m.size();
    if (total > budget)
      throw BudgetExceeded("subset enumeration exceeds budget of " + std::to_string(budget) + " sets");
  }
}

bool key_less(const SubsetKey& a, const SubsetKey& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

// Largest integer c with c * p^s <= N * q^s, capped at N, for s = 0..max_s.
std::vector<std::uint64_t> count_caps(std::uint64_t N, const Rational& r, std::size_t max_s) {
  std::vector<std::uint64_t> caps(max_s + 1);
  for (std::size_t s = 0; s <= max_s; ++s) {
    BigCount lim = floor(Rational(BigCount(static_cast<unsigned long>(N))) * power(Rational(1) / r, static_cast<long>(s)));
    caps[s] = lim >= N ? N : to_u64(lim);
  }
  return caps;
}

}  // namespace

std::unordered_map<SubsetKey, std::uint64_t> subset_counts(const Family& f, std::uint64_t budget) {
  check_budget(f, budget);
  std::unordered_map<SubsetKey, std::uint64_t> counts;
  SubsetKey key;
  for (const auto& m : f) {
    SubsetKey full = m.key();
    const std::size_t s = full.size();
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << s); ++mask) {
      key.clear();
      for (std::size_t b = 0; b < s; ++b)
        if (mask >> b & 1) key.push_back(full[b]);
      ++counts[key];
    }
  }
  return counts;
}

SpreadCertificate is_r_spread(const Family& f, const Rational& r, std::uint64_t budget) {
  if (f.empty()) throw ValidationError("spreadness of an empty family is undefined");
  if (r <= 0) throw ValidationError("r must be positive");
  auto counts = subset_counts(f, budget);
  const std::size_t max_s = f.max_member_size();
  auto caps = count_caps(f.size(), r, max_s);

  const SubsetKey* worst = nullptr;
  std::uint64_t worst_count = 0;
  for (const auto& [key, c] : counts) {
    if (c > caps[key.size()] && (!worst || key_less(key, *worst))) {
      worst = &key;
      worst_count = c;
    }
  }
  SpreadCertificate cert{r, static_cast<int>(max_s), std::nullopt};
  if (worst) {
    long s = static_cast<long>(worst->size());
    cert.verified_up_to = static_cast<int>(s) - 1;
    cert.witness = SpreadViolation{PartialPermutation::from_key(f.n(), *worst),
                                   BigCount(static_cast<unsigned long>(worst_count)),
                                   power(r, -s) * Rational(BigCount(static_cast<unsigned long>(f.size())))};
  }
  return cert;
}

RTSpreadResult is_r_t_spread(const Family& f, const Rational& r, int t, std::uint64_t budget) {
  if (t < 0) throw ValidationError("t must be nonnegative");
  RTSpreadResult out;
  if (t == 0) {
    auto cert = is_r_spread(f, r, budget);
    out.checked_T = 1;
    if (!cert.passed()) {
      out.passed = false;
      out.failing_T = PartialPermutation::empty(f.n());
      out.failing_certificate = cert;
    }
    return out;
  }
  std::set<SubsetKey> ts;
  std::uint64_t work = 0;
  for (const auto& m : f) {
    if (m.size() < static_cast<std::size_t>(t)) continue;
    work += to_u64(binomial(static_cast<long>(m.size()), t));
    if (work > budget) throw BudgetExceeded("t-subset enumeration exceeds budget");
    SubsetKey full = m.key();
    std::vector<int> idx(t);
    for (int i = 0; i < t; ++i) idx[i] = i;
    const int s = static_cast<int>(full.size());
    for (;;) {
      SubsetKey k;
      for (int i : idx) k.push_back(full[i]);
      ts.insert(k);
      int i = t - 1;
      while (i >= 0 && idx[i] == s - t + i) --i;
      if (i < 0) break;
      ++idx[i];
      for (int j = i + 1; j < t; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  for (const auto& k : ts) {
    PartialPermutation T = PartialPermutation::from_key(f.n(), k);
    auto cert = is_r_spread(f.restrict(T), r, budget);
    ++out.checked_T;
    if (!cert.passed()) {
      out.passed = false;
      out.failing_T = T;
      out.failing_certificate = cert;
      return out;
    }
  }
  return out;
}

SpreadRestriction find_spread_restriction(const Family& f, const Rational& r, const PartialPermutation& base,
                                          std::uint64_t budget) {
  if (r <= 0) throw ValidationError("r must be positive");
  SpreadRestriction out;
  out.X = base;
  out.g = f.restrict(base);
  if (out.g.empty()) throw ValidationError("no member contains the base set " + base.to_string());
  out.base_count = static_cast<unsigned long>(out.g.size());
  const Rational N0(out.base_count);
  for (;;) {
    auto counts = subset_counts(out.g, budget);
    const long grown = static_cast<long>(out.X.size() - base.size());
    const SubsetKey* best = nullptr;
    for (const auto& [key, c] : counts) {
      if (key.empty()) continue;
      if (best && !key_less(key, *best)) continue;
      // |G[S]| >= r^-(|X|+|S|-|base|) |F(base)|
      if (Rational(BigCount(static_cast<unsigned long>(c))) >= power(r, -(grown + static_cast<long>(key.size()))) * N0)
        best = &key;
    }
    if (!best) return out;
    PartialPermutation S = PartialPermutation::from_key(f.n(), *best);
    out.X = out.X.united(S);
    out.g = out.g.restrict(S);
    ++out.steps;
  }
}

SpreadLemmaBound spread_lemma_bound(const Rational& r, const Rational& p, int m, int max_member) {
  if (m < 1) throw ValidationError("m must be positive");
  SpreadLemmaBound b;
  b.r = r;
  b.p = p;
  b.m = m;
  b.delta = p / m;
  b.max_member = max_member;
  b.value = 0;
  Rational rd = r * b.delta;
  if (rd <= 1) return b;
  Rational L = log2_enclosure(rd, 64).lo;
  if (L <= 0) return b;
  b.value = 1 - Rational(max_member) * power(Rational(5) / L, m);
  b.vacuous = b.value <= 0;
  return b;
}

SpreadLemmaBound best_spread_lemma_bound(const Rational& r, const Rational& p, int max_member, int max_m) {
  SpreadLemmaBound best = spread_lemma_bound(r, p, 1, max_member);
  for (int m = 2; m <= max_m; ++m) {
    auto b = spread_lemma_bound(r, p, m, max_member);
    if (b.value > best.value) best = b;
  }
  return best;
}

std::uint64_t count_containment_hits(const Family& f, const RandomSubsetSpec& spec, std::uint64_t trials,
                                     unsigned threads) {
  if (spec.p < 0 || spec.p > 1) throw ValidationError("p must lie in [0, 1]");
  const int n = f.n();
  std::vector<std::vector<std::uint32_t>> members;
  for (const auto& m : f) {
    std::vector<std::uint32_t> ids;
    for (const Cell& c : m.cells()) ids.push_back(m.cell_id(c));
    members.push_back(std::move(ids));
  }
  const std::uint64_t blocks = (trials + kTrialBlock - 1) / kTrialBlock;
  std::vector<std::uint64_t> block_hits(blocks, 0);
  const Rng root(spec.seed);

  auto run_block = [&](std::uint64_t b) {
    Rng rng = root.derive(b);
    std::vector<std::uint64_t> stamp(static_cast<std::size_t>(n) * n, 0);
    std::vector<char> in_w(static_cast<std::size_t>(n) * n, 0);
    const std::uint64_t lo = b * kTrialBlock, hi = std::min(trials, lo + kTrialBlock);
    std::uint64_t hits = 0;
    for (std::uint64_t trial = lo; trial < hi; ++trial) {
      const std::uint64_t gen = trial + 1;
      bool hit = false;
      for (const auto& ids : members) {
        bool all = true;
        for (std::uint32_t id : ids) {
          if (stamp[id] != gen) {
            stamp[id] = gen;
            in_w[id] = rng.bernoulli(spec.p);
          }
          if (!in_w[id]) {
            all = false;
            break;
          }
        }
        if (all) {
          hit = true;
          break;
        }
      }
      hits += hit;
    }
    block_hits[b] = hits;
  };

  if (threads <= 1 || blocks <= 1) {
    for (std::uint64_t b = 0; b < blocks; ++b) run_block(b);
  } else {
    std::atomic<std::uint64_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < std::min<std::uint64_t>(threads, blocks); ++i)
      pool.emplace_back([&] {
        for (std::uint64_t b; (b = next.fetch_add(1)) < blocks;) run_block(b);
      });
    for (auto& th : pool) th.join();
  }
  std::uint64_t total = 0;
  for (auto h : block_hits) total += h;
  return total;
}

SpreadLemmaEstimate spread_lemma_estimate(const Family& f, const RandomSubsetSpec& spec, std::uint64_t trials,
                                          const Rational& r, int m, unsigned threads) {
  if (spec.p <= 0 || spec.p > 1) throw ValidationError("p must lie in (0, 1]");
  if (trials == 0) throw ValidationError("trials must be positive");
  SpreadLemmaEstimate est;
  est.trials = trials;
  est.seed = spec.seed;
  est.hits = count_containment_hits(f, spec, trials, threads);
  est.empirical_prob = Rational(BigCount(static_cast<unsigned long>(est.hits)), BigCount(static_cast<unsigned long>(trials)));
  est.empirical_prob.canonicalize();
  est.bound = spread_lemma_bound(r, spec.p, m, static_cast<int>(f.max_member_size()));
  double ph = est.empirical_prob.get_d();
  double pb = std::clamp(est.bound.value.get_d(), 0.0, 1.0);
  est.sigma = std::sqrt(std::max(ph * (1 - ph), pb * (1 - pb)) / static_cast<double>(trials));
  return est;
}

std::optional<DisjointPair> disjoint_pair_search(const Family& g1, const Family& g2, std::uint64_t max_attempts,
                                                 std::uint64_t seed) {
  if (g1.n() != g2.n()) throw ValidationError("ground size mismatch");
  const int n = g1.n();
  const Rng root(seed);
  const Rational half(1, 2);
  std::vector<std::uint64_t> stamp(static_cast<std::size_t>(n) * n, 0);
  std::vector<char> side(static_cast<std::size_t>(n) * n, 0);

  for (std::uint64_t attempt = 1; attempt <= max_attempts; ++attempt) {
    Rng rng = root.derive(attempt);
    auto in_first = [&](const PartialPermutation& p, const Cell& c) {
      std::uint16_t id = p.cell_id(c);
      if (stamp[id] != attempt) {
        stamp[id] = attempt;
        side[id] = rng.bernoulli(half);
      }
      return side[id] != 0;
    };
    auto find = [&](const Family& g, bool want_first) -> const PartialPermutation* {
      for (const auto& m : g) {
        bool ok = true;
        for (const Cell& c : m.cells())
          if (in_first(m, c) != want_first) {
            ok = false;
            break;
          }
        if (ok) return &m;
      }
      return nullptr;
    };
    const PartialPermutation* a = find(g1, true);
    if (!a) continue;
    const PartialPermutation* b = find(g2, false);
    if (!b) continue;
    if (intersection_size(*a, *b) != 0 || !g1.contains(*a) || !g2.contains(*b))
      throw InvariantViolation("disjoint pair failed verification");
    return DisjointPair{*a, *b, attempt};
  }
  return std::nullopt;
}

}  // namespace tperm
