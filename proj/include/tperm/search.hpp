#pragma once

#include "tperm/bigint.hpp"
#include "tperm/family.hpp"
#include "tperm/kernels.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace tperm {

inline constexpr int kExactCliqueCap = 8;
inline constexpr std::size_t kMaxOptima = 10000;

/// Permutations of [n] with at least t fixed points other than the
/// identity, ordered by degree (descending) then lexicographically, with
/// bitset adjacency "agree in at least t positions". Maximum t-intersecting
/// families containing the identity are the identity plus a clique here.
class AgreementGraph {
 public:
  AgreementGraph(int n, int t, const simd::KernelTable& kernels = simd::active_kernels());

  int n() const { return n_; }
  int t() const { return t_; }
  std::size_t size() const { return images_.size(); }
  std::size_t words() const { return words_; }
  const std::uint64_t* row(std::size_t v) const { return adj_.data() + v * words_; }
  bool adjacent(std::size_t a, std::size_t b) const { return row(a)[b / 64] >> (b % 64) & 1; }
  const std::vector<std::uint8_t>& images(std::size_t v) const { return images_[v]; }
  PartialPermutation permutation(std::size_t v) const;
  std::size_t degree(std::size_t v) const { return degree_[v]; }
  const simd::KernelTable& kernels() const { return *kernels_; }

 private:
  int n_, t_;
  std::size_t words_ = 0;
  std::vector<std::vector<std::uint8_t>> images_;  // 0-based images
  std::vector<std::size_t> degree_;
  std::vector<std::uint64_t> adj_;
  const simd::KernelTable* kernels_;
};

/// Agreement bitset rows over an arbitrary list of full permutations.
std::vector<std::uint64_t> agreement_matrix(const std::vector<PartialPermutation>& perms, int t,
                                            const simd::KernelTable& kernels = simd::active_kernels());

struct AkMatch {
  int k = 0;
  PartialPermutation sigma;
  PartialPermutation tau;
  PartialPermutation T;  // |T| = t+2k; every member has >= t+k cells of T
};

struct MaxFamilyOptions {
  std::uint64_t node_budget = 2'000'000'000ULL;
  bool all_optima = false;
  std::size_t optima_cap = kMaxOptima;
  int cap = kExactCliqueCap;
  const simd::KernelTable* kernels = nullptr;  // default: active_kernels()
};

struct ExtremalResult {
  int n = 0, t = 0;
  BigCount max_size;
  Family witness;
  std::optional<AkMatch> matched_Ak;
  BigCount conjecture_value;  // max_k |A_k|
  int conjecture_k = 0;
  bool optimal = true;
  std::uint64_t nodes = 0;
  double seconds = 0;
  /// all_optima mode: maximum families containing the identity.
  std::vector<Family> optima;
  bool optima_truncated = false;
};

/// Exact maximum t-intersecting family of permutations of [n], by
/// branch and bound with greedy colouring bounds; the best A_k is the
/// initial incumbent. On budget exhaustion, optimal = false.
ExtremalResult max_t_intersecting(int n, int t, const MaxFamilyOptions& opts = {});

/// Finds T and sigma, tau with f ⊆ sigma A_k tau, where
/// (sigma pi tau)(x) = sigma(pi(tau(x))). Tries k = 0, 1, ... in order.
/// Throws BudgetExceeded if the search for T runs out of nodes.
std::optional<AkMatch> detect_Ak_structure(const Family& f, int n, int t, std::uint64_t node_budget = 10'000'000);
/// Every member of f lies in sigma A_k tau.
bool verify_Ak_match(const Family& f, int t, const AkMatch& m);

struct ConflictReport {
  BigCount count;          // pi with >= t+k cells of T and |pi ∩ sigma| <= t-1
  BigCount product_bound;  // C(t,k) D(n-t-k)
  bool sigma_in_Ak = false;     // sigma has >= t+k cells of T
  bool bound_applies = false;   // sigma has <= t+k-1 cells of T
  bool bound_holds = true;
  BigCount construction_pairs;     // sum over admissible Y of the derangement counts
  BigCount construction_distinct;  // distinct permutations those pairs produce
};

ConflictReport conflicting_count(const PartialPermutation& sigma, const PartialPermutation& T, int t, int k,
                                 int cap = 9);

struct StabilityReport {
  int n = 0, t = 0;
  BigCount conjecture_value;
  BigCount largest_non_Ak;  // 0 if every t-intersecting family is A_k-contained
  Family witness;
  Rational ratio;
  bool optimal = true;
  std::uint64_t nodes = 0;
};

/// Largest t-intersecting family not contained in any sigma A_k tau.
StabilityReport stability_gap_report(int n, int t, std::uint64_t node_budget = 50'000'000);

struct ConjectureRow {
  int t = 0;
  BigCount max_size;
  BigCount conjecture_value;
  int conjecture_k = 0;
  bool equal = false;
  bool optimal = true;
  std::optional<AkMatch> matched_Ak;
  std::size_t optima = 0;
  std::size_t optima_matched = 0;
  bool optima_truncated = false;
  std::uint64_t nodes = 0;
  Family witness;
};

struct ConjectureReport {
  int n = 0;
  std::vector<ConjectureRow> rows;
  bool all_equal() const;
};

ConjectureReport verify_conjecture(int n, int t_min, int t_max, const MaxFamilyOptions& opts = {});

}  // namespace tperm
