#pragma once

#include "tperm/family.hpp"
#include "tperm/spread.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace tperm {

/// When the optional booster seeds the spread restriction.
enum class BoostMode {
  kEveryRound,  // every round starts from the booster's set
  kOnOversize,  // only retried when the unseeded piece exceeds q
};

std::string to_string(BoostMode m);

struct ApproximationConfig {
  int q = 0;
  Rational r;                   // spread parameter, > 1
  Rational residual_threshold;  // stop once |F_j| < this
  int t_slack = 0;              // t' = t - t_slack for the density boost
  int max_rounds = 10000;
  BoostMode boost_mode = BoostMode::kOnOversize;
  std::uint64_t subset_budget = kDefaultSubsetBudget;
};

struct DensityBoost {
  PartialPermutation X;
  Family covered;         // f[X]
  BigCount pigeonhole;    // ceil(|f| / C(|s|, t'))
};

/// The t'-subset X of s maximizing |f[X]|, lexicographically smallest on ties.
/// Throws ValidationError naming a member that meets s in fewer than t' cells.
DensityBoost density_boost(const Family& f, const PartialPermutation& s, int t_prime);

/// Returns a seed set for the round, or nothing to run unseeded.
using Booster = std::function<std::optional<PartialPermutation>(const Family& current, int round)>;

enum class Termination { kBelowThreshold, kOversize, kExhausted };
std::string to_string(Termination t);

struct RoundLog {
  int round = 0;
  std::size_t family_size = 0;
  PartialPermutation base;
  PartialPermutation piece;
  std::size_t removed = 0;  // |F_j[S_j]|
  bool boosted = false;
  bool oversize = false;
  std::optional<SpreadCertificate> certificate;  // F_j(S_j) re-check
};

struct SpreadApproximation {
  Family pieces;
  Family residual;
  std::vector<RoundLog> rounds;
  Termination termination = Termination::kExhausted;
  std::optional<PartialPermutation> oversize_witness;
  /// Set only when every piece has size in [t, q].
  std::optional<bool> pieces_t_intersecting;
};

SpreadApproximation spread_approximation(const Family& f, int t, const ApproximationConfig& cfg,
                                         const Booster& booster = nullptr);

/// Stage i+1 seeds its rounds with a density boost on the largest piece of
/// stage i. q must be non-increasing along the schedule.
std::vector<SpreadApproximation> iterative_driver(const Family& f, int t,
                                                  const std::vector<ApproximationConfig>& schedule);

/// u!/n
Rational asymptotic_residual_threshold(int n, int t);
/// 2^i u!/n^M
Rational asymptotic_stage_threshold(int n, int t, int i, int M);

}  // namespace tperm
