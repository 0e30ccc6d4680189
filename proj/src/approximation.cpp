#include "tperm/approximation.hpp"

#include "tperm/errors.hpp"

#include <algorithm>
#include <map>

namespace tperm {

std::string to_string(BoostMode m) { return m == BoostMode::kEveryRound ? "every_round" : "on_oversize"; }

std::string to_string(Termination t) {
  switch (t) {
    case Termination::kBelowThreshold: return "below_threshold";
    case Termination::kOversize: return "oversize";
    case Termination::kExhausted: return "exhausted";
  }
  return "?";
}

DensityBoost density_boost(const Family& f, const PartialPermutation& s, int t_prime) {
  if (f.empty()) throw ValidationError("density_boost on an empty family");
  if (t_prime < 0 || s.size() < static_cast<std::size_t>(t_prime))
    throw ValidationError("density_boost needs 0 <= t' <= |s|");
  std::map<SubsetKey, std::uint64_t> counts;
  for (std::size_t i = 0; i < f.size(); ++i) {
    PartialPermutation common = f[i].intersected(s);
    if (common.size() < static_cast<std::size_t>(t_prime))
      throw ValidationError("member " + std::to_string(i) + " " + f[i].to_string() + " meets s in " +
                            std::to_string(common.size()) + " < " + std::to_string(t_prime) + " cells");
    SubsetKey full = common.key();
    const int m = static_cast<int>(full.size());
    std::vector<int> idx(t_prime);
    for (int j = 0; j < t_prime; ++j) idx[j] = j;
    for (;;) {
      SubsetKey k;
      for (int j : idx) k.push_back(full[j]);
      ++counts[k];
      int j = t_prime - 1;
      while (j >= 0 && idx[j] == m - t_prime + j) --j;
      if (j < 0) break;
      ++idx[j];
      for (int l = j + 1; l < t_prime; ++l) idx[l] = idx[l - 1] + 1;
    }
  }
  // std::map iterates lexicographically, so the first maximum is the lex-smallest.
  auto best = counts.begin();
  for (auto it = counts.begin(); it != counts.end(); ++it)
    if (it->second > best->second) best = it;
  DensityBoost out;
  out.X = PartialPermutation::from_key(f.n(), best->first);
  out.covered = f.select(out.X);
  Rational avg(BigCount(static_cast<unsigned long>(f.size())), binomial(static_cast<long>(s.size()), t_prime));
  avg.canonicalize();
  out.pigeonhole = ceil(avg);
  if (BigCount(static_cast<unsigned long>(out.covered.size())) < out.pigeonhole)
    throw InvariantViolation("density_boost below the pigeonhole bound");
  return out;
}

SpreadApproximation spread_approximation(const Family& f, int t, const ApproximationConfig& cfg,
                                         const Booster& booster) {
  if (cfg.q < t) throw ValidationError("q must be at least t");
  if (cfg.r <= 1) throw ValidationError("r must exceed 1");
  if (cfg.max_rounds < 1) throw ValidationError("max_rounds must be positive");
  if (!f.is_t_intersecting(t)) throw ValidationError("input family is not " + std::to_string(t) + "-intersecting");

  SpreadApproximation out;
  out.pieces = Family(f.n(), t);
  std::vector<PartialPermutation> pieces;
  Family current = f;
  const PartialPermutation none = PartialPermutation::empty(f.n());

  for (int round = 1;; ++round) {
    if (current.empty() || Rational(BigCount(static_cast<unsigned long>(current.size()))) < cfg.residual_threshold) {
      out.termination = current.empty() ? Termination::kExhausted : Termination::kBelowThreshold;
      break;
    }
    if (round > cfg.max_rounds) throw BudgetExceeded("spread approximation exceeded max_rounds");

    RoundLog log;
    log.round = round;
    log.family_size = current.size();
    log.base = none;
    if (booster && cfg.boost_mode == BoostMode::kEveryRound) {
      if (auto b = booster(current, round)) {
        log.base = *b;
        log.boosted = true;
      }
    }
    SpreadRestriction sr = find_spread_restriction(current, cfg.r, log.base, cfg.subset_budget);
    if (sr.X.size() > static_cast<std::size_t>(cfg.q) && booster && cfg.boost_mode == BoostMode::kOnOversize) {
      if (auto b = booster(current, round)) {
        log.base = *b;
        log.boosted = true;
        sr = find_spread_restriction(current, cfg.r, log.base, cfg.subset_budget);
      }
    }
    log.piece = sr.X;
    if (sr.X.size() > static_cast<std::size_t>(cfg.q)) {
      log.oversize = true;
      out.rounds.push_back(log);
      out.oversize_witness = sr.X;
      out.termination = Termination::kOversize;
      break;
    }
    log.certificate = is_r_spread(current.restrict(sr.X), cfg.r, cfg.subset_budget);
    if (!log.certificate->passed())
      throw InvariantViolation("spread piece " + sr.X.to_string() + " failed its spreadness re-check");
    Family removed = current.select(sr.X);
    log.removed = removed.size();
    current = current.minus(removed);
    pieces.push_back(sr.X);
    out.rounds.push_back(std::move(log));
  }

  out.pieces = Family(f.n(), t, std::move(pieces));
  out.residual = current;
  bool in_range = std::all_of(out.pieces.begin(), out.pieces.end(), [&](const PartialPermutation& p) {
    return p.size() >= static_cast<std::size_t>(t) && p.size() <= static_cast<std::size_t>(cfg.q);
  });
  if (in_range) out.pieces_t_intersecting = out.pieces.is_t_intersecting(t);
  return out;
}

std::vector<SpreadApproximation> iterative_driver(const Family& f, int t,
                                                  const std::vector<ApproximationConfig>& schedule) {
  if (schedule.empty()) throw ValidationError("empty schedule");
  for (std::size_t i = 1; i < schedule.size(); ++i)
    if (schedule[i].q > schedule[i - 1].q) throw ValidationError("schedule q must be non-increasing");

  std::vector<SpreadApproximation> stages;
  for (std::size_t i = 0; i < schedule.size(); ++i) {
    Booster booster;
    if (i > 0 && !stages.back().pieces.empty()) {
      const Family& prev = stages.back().pieces;
      PartialPermutation largest = prev[0];
      for (const auto& p : prev)
        if (p.size() > largest.size() || (p.size() == largest.size() && p < largest)) largest = p;
      const int t_prime = std::max(0, t - schedule[i].t_slack);
      booster = [largest, t_prime](const Family& current, int) -> std::optional<PartialPermutation> {
        if (largest.size() < static_cast<std::size_t>(t_prime)) return std::nullopt;
        std::vector<PartialPermutation> eligible;
        for (const auto& m : current)
          if (intersection_size(m, largest) >= static_cast<std::size_t>(t_prime)) eligible.push_back(m);
        if (eligible.empty()) return std::nullopt;
        return density_boost(Family::trusted(current.n(), current.t(), std::move(eligible)), largest, t_prime).X;
      };
    }
    stages.push_back(spread_approximation(f, t, schedule[i], booster));
  }
  return stages;
}

Rational asymptotic_residual_threshold(int n, int t) {
  Rational v(factorial(n - t), BigCount(n));
  v.canonicalize();
  return v;
}

Rational asymptotic_stage_threshold(int n, int t, int i, int M) {
  return Rational(power(BigCount(2), static_cast<unsigned long>(i)) * factorial(n - t)) * power(Rational(n), -M);
}

}  // namespace tperm
