#include "tperm/interval.hpp"

#include "tperm/errors.hpp"

namespace tperm {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::kHolds: return "holds";
    case Verdict::kFails: return "fails";
    case Verdict::kUndetermined: return "undetermined";
  }
  return "?";
}

double Enclosure::mid() const {
  Rational m = (lo + hi) / 2;
  return m.get_d();
}

Enclosure add(const Enclosure& a, const Enclosure& b) { return {a.lo + b.lo, a.hi + b.hi}; }
Enclosure sub(const Enclosure& a, const Enclosure& b) { return {a.lo - b.hi, a.hi - b.lo}; }

Enclosure mul_nonneg(const Enclosure& a, const Enclosure& b) {
  if (a.lo < 0 || b.lo < 0) throw InvariantViolation("mul_nonneg on a signed enclosure");
  return {a.lo * b.lo, a.hi * b.hi};
}

Enclosure pow_nonneg(const Enclosure& a, unsigned long exp) {
  if (a.lo < 0) throw InvariantViolation("pow_nonneg on a signed enclosure");
  return {power(a.lo, static_cast<long>(exp)), power(a.hi, static_cast<long>(exp))};
}

Enclosure reciprocal_pos(const Enclosure& a) {
  if (a.lo <= 0) throw InvariantViolation("reciprocal of an enclosure touching zero");
  return {1 / a.hi, 1 / a.lo};
}

Enclosure scale(const Enclosure& a, const Rational& c) {
  if (c >= 0) return {a.lo * c, a.hi * c};
  return {a.hi * c, a.lo * c};
}

namespace {

Rational dyadic(const BigCount& num, unsigned bits) {
  Rational out(num, power(BigCount(2), bits));
  out.canonicalize();
  return out;
}

Rational round_down(const Rational& v, unsigned bits) {
  return dyadic(floor(v * power(Rational(2), bits)), bits);
}

Rational round_up(const Rational& v, unsigned bits) {
  return dyadic(ceil(v * power(Rational(2), bits)), bits);
}

// exp(y) for 0 <= y <= 1/2 by Taylor series.
Enclosure exp_small(const Rational& y, unsigned bits) {
  Enclosure term = Enclosure::exact(1);
  Enclosure sum = Enclosure::exact(1);
  Rational eps = power(Rational(2), -static_cast<long>(bits) - 4);
  for (unsigned j = 1;; ++j) {
    term = outward(scale(term, y / j), bits + 8);
    sum = add(sum, term);
    sum = outward(sum, bits + 8);
    if (term.hi < eps) {
      // Tail after term j: term_{j+1} / (1 - y/(j+2)) <= term_j * y/(j+1) * 2.
      Rational tail = term.hi * y / (j + 1) * 2;
      sum.hi += tail;
      return sum;
    }
  }
}

}  // namespace

Enclosure outward(const Enclosure& a, unsigned bits) { return {round_down(a.lo, bits), round_up(a.hi, bits)}; }

Enclosure e_enclosure(unsigned terms) {
  if (terms < 1) terms = 1;
  Rational sum = 0;
  BigCount fact = 1;
  for (unsigned j = 0; j <= terms; ++j) {
    if (j > 0) fact *= j;
    sum += Rational(BigCount(1), fact);
  }
  Rational tail(BigCount(1), fact * terms);
  tail.canonicalize();
  return {sum, sum + tail};
}

Enclosure exp_enclosure(const Rational& x, unsigned bits) {
  if (x == 0) return Enclosure::exact(1);
  if (x < 0) return reciprocal_pos(exp_enclosure(-x, bits));
  unsigned s = 0;
  Rational y = x;
  while (y > Rational(1, 2)) {
    y /= 2;
    ++s;
  }
  unsigned work = bits + s + 16;
  Enclosure out = exp_small(y, work);
  for (unsigned i = 0; i < s; ++i) out = outward(mul_nonneg(out, out), work);
  return out;
}

Enclosure log2_enclosure(const Rational& x, unsigned bits) {
  if (x <= 0) throw HypothesisError("log2 of a nonpositive number");
  // Integer part: 2^k <= x < 2^(k+1).
  long k = static_cast<long>(mpz_sizeinbase(x.get_num_mpz_t(), 2)) -
           static_cast<long>(mpz_sizeinbase(x.get_den_mpz_t(), 2));
  while (power(Rational(2), k) > x) --k;
  while (power(Rational(2), k + 1) <= x) ++k;
  Rational y = x / power(Rational(2), k);
  if (y == 1) return Enclosure::exact(Rational(k));

  unsigned work = 2 * bits + 32;
  Enclosure yy = Enclosure::exact(y);
  Rational acc = k;
  Rational step = 1;
  for (unsigned i = 1; i <= bits; ++i) {
    step /= 2;
    yy = outward(mul_nonneg(yy, yy), work);
    if (yy.lo >= 2) {
      acc += step;
      yy = scale(yy, Rational(1, 2));
    } else if (yy.hi >= 2) {
      // Cannot tell which side of 2 we are on: stop with the wider interval.
      return {acc, acc + 2 * step};
    }
  }
  return {acc, acc + step};
}

Enclosure sqrt_enclosure(const Rational& x, unsigned bits) {
  if (x < 0) throw HypothesisError("sqrt of a negative number");
  BigCount pq = x.get_num() * x.get_den();
  BigCount scaled = pq * power(BigCount(4), bits);
  BigCount s;
  mpz_sqrt(s.get_mpz_t(), scaled.get_mpz_t());
  BigCount den = x.get_den() * power(BigCount(2), bits);
  Rational lo(s, den), hi(s * s == scaled ? s : s + 1, den);
  lo.canonicalize();
  hi.canonicalize();
  return {lo, hi};
}

Verdict less(const Enclosure& a, const Enclosure& b) {
  if (a.hi < b.lo) return Verdict::kHolds;
  if (a.lo >= b.hi) return Verdict::kFails;
  return Verdict::kUndetermined;
}

Verdict less_equal(const Enclosure& a, const Enclosure& b) {
  if (a.hi <= b.lo) return Verdict::kHolds;
  if (a.lo > b.hi) return Verdict::kFails;
  return Verdict::kUndetermined;
}

Verdict refine(const std::function<Verdict(unsigned)>& check, unsigned start_bits, unsigned max_bits) {
  for (unsigned bits = start_bits; bits <= max_bits; bits *= 2) {
    Verdict v = check(bits);
    if (v != Verdict::kUndetermined) return v;
  }
  return Verdict::kUndetermined;
}

}  // namespace tperm
