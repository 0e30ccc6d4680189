#pragma once

#include "tperm/bigint.hpp"
#include "tperm/family.hpp"

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <utility>

namespace tperm {

/// Default cap on sum over members of 2^|member| candidate subsets.
inline constexpr std::uint64_t kDefaultSubsetBudget = std::uint64_t{1} << 24;

struct SpreadViolation {
  PartialPermutation set;
  BigCount count;      // |F[S]|
  Rational threshold;  // r^-|S| |F|
};

struct SpreadCertificate {
  Rational r;
  /// Every S with |S| <= verified_up_to was checked and passed.
  int verified_up_to = 0;
  std::optional<SpreadViolation> witness;

  bool passed() const { return !witness.has_value(); }
};

/// |F[S]| for every S contained in at least one member (including S = ∅).
std::unordered_map<SubsetKey, std::uint64_t> subset_counts(const Family& f,
                                                           std::uint64_t budget = kDefaultSubsetBudget);

/// Exhaustive r-spreadness test. The witness, if any, is the first violating
/// S in (size, lex) order.
SpreadCertificate is_r_spread(const Family& f, const Rational& r, std::uint64_t budget = kDefaultSubsetBudget);

struct RTSpreadResult {
  bool passed = true;
  std::optional<PartialPermutation> failing_T;
  std::optional<SpreadCertificate> failing_certificate;
  std::size_t checked_T = 0;
};

/// F(T) is r-spread for every t-set T lying inside some member.
RTSpreadResult is_r_t_spread(const Family& f, const Rational& r, int t,
                             std::uint64_t budget = kDefaultSubsetBudget);

struct SpreadRestriction {
  PartialPermutation X;
  Family g;           // F(X)
  BigCount base_count;  // |F(base)|
  int steps = 0;
};

/// Grows X from base while |F(X)| >= r^-(|X|-|base|) |F(base)|, each step
/// adding the (size, lex)-smallest admissible nonempty set. The result is
/// inclusion-maximal, hence F(X) is r-spread.
SpreadRestriction find_spread_restriction(const Family& f, const Rational& r, const PartialPermutation& base,
                                          std::uint64_t budget = kDefaultSubsetBudget);

struct RandomSubsetSpec {
  Rational p;
  std::uint64_t seed = 0;
};

struct SpreadLemmaBound {
  Rational r;
  Rational p;
  int m = 1;
  Rational delta;      // p/m
  int max_member = 0;  // the lemma's n: members have size <= this
  Rational value;      // lower bound for 1 - n(5/log2(r delta))^m
  bool vacuous = true;
};

/// Evaluates the lemma's right-hand side, rounding so the value is a lower
/// bound. vacuous is set when r*delta <= 1 or the bound is <= 0.
SpreadLemmaBound spread_lemma_bound(const Rational& r, const Rational& p, int m, int max_member);
/// The m in [1, max_m] with the largest bound (smallest m on ties).
SpreadLemmaBound best_spread_lemma_bound(const Rational& r, const Rational& p, int max_member, int max_m = 64);

struct SpreadLemmaEstimate {
  std::uint64_t trials = 0;
  std::uint64_t hits = 0;
  std::uint64_t seed = 0;
  Rational empirical_prob;
  SpreadLemmaBound bound;
  double sigma = 0;  // binomial standard error used for comparisons
};

inline constexpr std::uint64_t kTrialBlock = 1024;

/// Monte-Carlo estimate of P(some member is contained in a p-random subset
/// of the n x n grid). Blocks of kTrialBlock trials use derived streams and
/// are merged by summation, so the result does not depend on `threads`.
SpreadLemmaEstimate spread_lemma_estimate(const Family& f, const RandomSubsetSpec& spec, std::uint64_t trials,
                                          const Rational& r, int m, unsigned threads = 1);

/// Number of hits only; the building block of spread_lemma_estimate.
std::uint64_t count_containment_hits(const Family& f, const RandomSubsetSpec& spec, std::uint64_t trials,
                                     unsigned threads = 1);

struct DisjointPair {
  PartialPermutation first;
  PartialPermutation second;
  std::uint64_t attempt = 0;  // 1-based
};

/// Random halving search for G1 in g1 and G2 in g2 with G1 ∩ G2 = ∅.
std::optional<DisjointPair> disjoint_pair_search(const Family& g1, const Family& g2, std::uint64_t max_attempts,
                                                 std::uint64_t seed);

}  // namespace tperm
