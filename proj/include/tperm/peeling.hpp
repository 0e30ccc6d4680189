#pragma once

#include "tperm/bigint.hpp"
#include "tperm/family.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace tperm {

struct SimplifyEdit {
  enum class Kind { kRemoveSuperset, kShrink };
  Kind kind = Kind::kRemoveSuperset;
  PartialPermutation before;
  std::optional<PartialPermutation> after;      // shrink result
  std::optional<PartialPermutation> kept;       // the subset that stays, for removals
  int stage = -1;                               // peel layer k, or -1 outside peel
};

std::string to_string(SimplifyEdit::Kind k);

struct SimplifyOptions {
  /// Visit members and cells in a seeded random order instead of the
  /// deterministic (size desc, lex) / lex-largest-cell order.
  std::optional<std::uint64_t> random_order_seed;
  int stage = -1;
};

struct Simplified {
  Family family;
  std::vector<SimplifyEdit> edits;
};

/// Removes members that contain another member and shrinks members cell by
/// cell while the
/// family stays t-intersecting (each member counted against itself too,
/// so members keep at least t cells). Runs to a fixpoint.
Simplified simplify_logged(const Family& s, int t, const SimplifyOptions& opts = {});
Family simplify(const Family& s, int t);

struct SimplifiedCheck {
  bool antichain = true;
  bool t_intersecting = true;
  bool maximality = true;  // property (c)
  std::optional<PartialPermutation> witness_member;
  std::optional<PartialPermutation> witness_subset;
  bool exhaustive = true;  // false if some member exceeded the exhaustive cap
  bool ok() const { return antichain && t_intersecting && maximality; }
};

/// Checks the simplification properties directly. Property (c) is checked
/// over all proper subsets for members with at most `exhaustive_cap` cells
/// and over the one-cell-smaller subsets otherwise.
SimplifiedCheck verify_simplified(const Family& s, int t, std::size_t exhaustive_cap = 20);

struct PeelingResult {
  int t = 0;
  int q = 0;
  std::map<int, Family> W;  // k -> W_k
  std::map<int, Family> T;  // k -> T_k
  std::vector<SimplifyEdit> provenance;

  const Family& top() const { return T.at(q - t); }
};

PeelingResult peel(const Family& s, int t, int q);

struct CoverageCheck {
  int k = 0;
  bool equal = true;      // F[T_k] = F[T_{k-1}] ∪ F[W_k]
  bool contained = true;  // F[T_k] ⊆ F[T_{k-1}] ∪ F[W_k]
  std::optional<PartialPermutation> witness;
};

/// Compares F[T_k] with F[T_{k-1}] ∪ F[W_k] for a probe family F, k >= 1.
CoverageCheck check_coverage(const PeelingResult& p, const Family& probe, int k);

struct DegreeViolation {
  PartialPermutation X;
  std::uint64_t count = 0;
  BigCount bound;
};

struct DegreeReport {
  int t = 0, k = 0;
  std::size_t probes = 0;
  std::vector<DegreeViolation> violations;          // base k
  std::vector<DegreeViolation> violations_shifted;  // base k+1
};

/// |W_k(X)| <= k^(t+k-|X|) per probe, and the same with base k+1.
DegreeReport check_W_k_degree_bound(const Family& w, int t, int k, const std::vector<PartialPermutation>& probes);

/// sum_{j=0}^k C(t,j) C(k,j)^2 base^(k-j) with base = k (or k+1 when shifted).
BigCount rough_bound_W_k(int t, int k, bool shifted = false);
/// Two members of the family meet in exactly t cells.
bool has_exact_t_pair(const Family& f, int t);

/// f(j)/f(j+1) = (j+1)^3 k / ((t-j)(k-j)^2), 0 <= j < min(t,k).
Rational bound_ratio_f(int t, int k, int j);
/// argmax over j in [0, min(t,k)] of C(t,j)C(k,j)^2 k^(k-j), smallest on ties.
int j0_argmax_4(int t, int k);
/// (200 max(k, t/k))^k, k >= 1.
Rational cor_bound_W_k(int t, int k);

}  // namespace tperm
