#include "tperm/estimates.hpp"

#include "tperm/errors.hpp"

namespace tperm {

std::string to_string(BoundKind k) {
  switch (k) {
    case BoundKind::kBinomBound: return "binom_bound";
    case BoundKind::kFactorialBound: return "factorial_bound";
    case BoundKind::kBinomRatio: return "binom_ratio";
    case BoundKind::kCloseBinomial: return "close_binomial";
  }
  return "?";
}

BoundKind parse_bound_kind(const std::string& s) {
  if (s == "binom_bound") return BoundKind::kBinomBound;
  if (s == "factorial_bound") return BoundKind::kFactorialBound;
  if (s == "binom_ratio") return BoundKind::kBinomRatio;
  if (s == "close_binomial") return BoundKind::kCloseBinomial;
  throw ValidationError("unknown bound '" + s + "'");
}

BoundCheck binom_bound(long n, long k) {
  BoundCheck r;
  r.kind = BoundKind::kBinomBound;
  r.hypothesis_ok = n >= k && k >= 0;
  if (!r.hypothesis_ok) r.hypothesis_note = "need n >= k >= 0";
  Enclosure lhs = Enclosure::exact(Rational(binomial(n, k)));
  if (k <= 0) {
    r.sides = {{"C(n,k)", lhs}, {"(en/k)^k", Enclosure::exact(1)}};
    r.verdict = less_equal(lhs, Enclosure::exact(1));
    return r;
  }
  Rational nk(n, k);
  nk.canonicalize();
  Enclosure rhs;
  r.verdict = refine([&](unsigned bits) {
    rhs = scale(pow_nonneg(e_enclosure(bits / 2), k), power(nk, k));
    return less_equal(lhs, rhs);
  });
  r.sides = {{"C(n,k)", lhs}, {"(en/k)^k", rhs}};
  return r;
}

BoundCheck factorial_bound(long n, long k) {
  BoundCheck r;
  r.kind = BoundKind::kFactorialBound;
  r.hypothesis_ok = n >= k && k >= 1;
  if (!r.hypothesis_ok) r.hypothesis_note = "need n >= k >= 1";
  if (n < 0 || k < 0 || n < k) {
    r.verdict = Verdict::kUndetermined;
    return r;
  }
  Enclosure lhs = Enclosure::exact(Rational(factorial(n) / factorial(k)));
  Enclosure rhs;
  r.verdict = refine([&](unsigned bits) {
    Enclosure inv_e = reciprocal_pos(e_enclosure(bits / 2));
    rhs = scale(pow_nonneg(inv_e, n - k), power(Rational(n), n - k));
    return less_equal(rhs, lhs);
  });
  r.sides = {{"n!/k!", lhs}, {"(n/e)^(n-k)", rhs}};
  return r;
}

BoundCheck binom_ratio(long a, long b, long x) {
  BoundCheck r;
  r.kind = BoundKind::kBinomRatio;
  r.hypothesis_ok = a >= 1 && b > a && x >= 2 * b;
  if (!r.hypothesis_ok) r.hypothesis_note = "need positive integers with a < b and x >= 2b";
  if (a < 1 || b < 1 || x < 1) {
    r.verdict = Verdict::kUndetermined;
    return r;
  }
  Rational ca(binomial(x, a)), cb(binomial(x, b));
  Rational xb(x, b), xa(x, a);
  xb.canonicalize();
  xa.canonicalize();
  if (xb == 1) {
    // 0^(b-a) with b-a possibly negative: the left side is undefined.
    r.verdict = Verdict::kUndetermined;
    return r;
  }
  Rational low = power(Rational(xb - 1), b - a) * ca;
  Rational high = power(xa, b - a) * ca;
  r.sides = {{"(x/b-1)^(b-a) C(x,a)", Enclosure::exact(low)},
             {"C(x,b)", Enclosure::exact(cb)},
             {"(x/a)^(b-a) C(x,a)", Enclosure::exact(high)}};
  r.verdict = (low < cb && cb < high) ? Verdict::kHolds : Verdict::kFails;
  return r;
}

BoundCheck close_binomial(long a, long b) {
  BoundCheck r;
  r.kind = BoundKind::kCloseBinomial;
  r.hypothesis_ok = a >= b && b >= 1;
  if (!r.hypothesis_ok) r.hypothesis_note = "need a >= b >= 1";
  if (a < b || b < 0) {
    r.verdict = Verdict::kUndetermined;
    return r;
  }
  Rational ratio(binomial(a + b, b), binomial(a, b));
  ratio.canonicalize();
  Rational expo(BigCount(b) * b, BigCount(a - b + 1));
  expo.canonicalize();
  Enclosure lhs = Enclosure::exact(ratio), rhs;
  r.verdict = refine([&](unsigned bits) {
    rhs = exp_enclosure(expo, bits);
    return less(lhs, rhs);
  });
  r.sides = {{"C(a+b,b)/C(a,b)", lhs}, {"exp(b^2/(a-b+1))", rhs}};
  return r;
}

BoundCheck elementary_bound_check(BoundKind which, const std::vector<long>& args) {
  auto need = [&](std::size_t k) {
    if (args.size() != k) throw ValidationError(to_string(which) + " takes " + std::to_string(k) + " arguments");
  };
  switch (which) {
    case BoundKind::kBinomBound: need(2); return binom_bound(args[0], args[1]);
    case BoundKind::kFactorialBound: need(2); return factorial_bound(args[0], args[1]);
    case BoundKind::kBinomRatio: need(3); return binom_ratio(args[0], args[1], args[2]);
    case BoundKind::kCloseBinomial: need(2); return close_binomial(args[0], args[1]);
  }
  throw ValidationError("unknown bound");
}

BigCount f_value(long t, long u, long j) { return binomial(t, j) * factorial(u - j); }

FArgmax f_argmax_j0(long t, long u) {
  if (t < 1 || u < 1) throw ValidationError("need t >= 1 and u >= 1");
  FArgmax out;
  BigCount best = -1;
  for (long j = 0; j <= u / 2; ++j) {
    BigCount f = f_value(t, u, j);
    out.table.emplace_back(static_cast<int>(j), f);
    if (f > best) {
      best = f;
      out.j0 = static_cast<int>(j);
    }
  }
  return out;
}

Rational f_step_ratio(long t, long u, long j) {
  if (j < 0 || j >= t) throw HypothesisError("f ratio needs 0 <= j < t");
  Rational r(BigCount(j + 1) * (u - j), BigCount(t - j));
  r.canonicalize();
  return r;
}

SumFRatio sum_f_ratio(long t, long u) {
  if (u < 10) throw HypothesisError("sum_f_ratio needs u >= 10");
  if (t < 1) throw HypothesisError("sum_f_ratio needs t >= 1");
  SumFRatio out;
  for (long j = 0; j <= u / 10; ++j) out.numerator += f_value(t, u, j);
  for (long j = 0; j <= u; ++j) out.max_f = std::max(out.max_f, f_value(t, u, j));
  Rational tu(t, u);
  tu.canonicalize();
  Enclosure den = scale(sqrt_enclosure(tu, 128), Rational(out.max_f));
  out.value = scale(reciprocal_pos(den), Rational(out.numerator));
  out.approx = out.value.mid();
  return out;
}

}  // namespace tperm
