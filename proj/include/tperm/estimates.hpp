#pragma once

#include "tperm/bigint.hpp"
#include "tperm/interval.hpp"

#include <string>
#include <utility>
#include <vector>

namespace tperm {

enum class BoundKind { kBinomBound, kFactorialBound, kBinomRatio, kCloseBinomial };

std::string to_string(BoundKind k);
BoundKind parse_bound_kind(const std::string& s);

struct BoundCheck {
  BoundKind kind = BoundKind::kBinomBound;
  bool hypothesis_ok = false;
  std::string hypothesis_note;  // empty when hypothesis_ok
  /// Evaluated even when the hypothesis fails, so the two can be told apart.
  Verdict verdict = Verdict::kUndetermined;
  /// Named quantities in the order they appear in the inequality.
  std::vector<std::pair<std::string, Enclosure>> sides;

  bool ok() const { return hypothesis_ok && verdict == Verdict::kHolds; }
};

/// C(n,k) <= (en/k)^k, for n >= k >= 0 (k = 0 reads as 1 <= 1).
BoundCheck binom_bound(long n, long k);
/// n!/k! >= (n/e)^(n-k), for n >= k >= 1.
BoundCheck factorial_bound(long n, long k);
/// (x/b - 1)^(b-a) C(x,a) < C(x,b) < (x/a)^(b-a) C(x,a), hypothesis a < b, x >= 2b.
BoundCheck binom_ratio(long a, long b, long x);
/// C(a+b,b)/C(a,b) < exp(b^2/(a-b+1)), for a >= b >= 1.
BoundCheck close_binomial(long a, long b);

BoundCheck elementary_bound_check(BoundKind which, const std::vector<long>& args);

struct FArgmax {
  int j0 = 0;
  std::vector<std::pair<int, BigCount>> table;  // (j, f(j)) for j in [0, u/2]
};
/// f(j) = C(t,j)(u-j)!.
BigCount f_value(long t, long u, long j);
FArgmax f_argmax_j0(long t, long u);
/// f(j)/f(j+1) = (j+1)(u-j)/(t-j), for 0 <= j < t.
Rational f_step_ratio(long t, long u, long j);

struct SumFRatio {
  Enclosure value;
  double approx = 0;
  BigCount numerator;  // sum_{j <= floor(u/10)} f(j)
  BigCount max_f;      // max_{0 <= j <= u} f(j)
};
/// (sum_{j=0}^{floor(0.1u)} f(j)) / (sqrt(t/u) * max_j f(j)), for u >= 10.
SumFRatio sum_f_ratio(long t, long u);

}  // namespace tperm
