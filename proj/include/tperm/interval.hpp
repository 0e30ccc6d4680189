#pragma once

#include "tperm/bigint.hpp"

#include <functional>
#include <string>

namespace tperm {

enum class Verdict { kHolds, kFails, kUndetermined };

std::string to_string(Verdict v);

/// Closed rational interval [lo, hi] guaranteed to contain some real quantity.
struct Enclosure {
  Rational lo;
  Rational hi;

  static Enclosure exact(const Rational& v) { return {v, v}; }
  double mid() const;
  Rational width() const { return hi - lo; }
  bool contains(const Rational& v) const { return lo <= v && v <= hi; }
};

// Arithmetic on enclosures. The nonnegative variants assume lo >= 0 on
// every operand, which is all the bound checkers ever need.
Enclosure add(const Enclosure& a, const Enclosure& b);
Enclosure sub(const Enclosure& a, const Enclosure& b);
Enclosure mul_nonneg(const Enclosure& a, const Enclosure& b);
Enclosure pow_nonneg(const Enclosure& a, unsigned long exp);
Enclosure reciprocal_pos(const Enclosure& a);
Enclosure scale(const Enclosure& a, const Rational& c);

/// Round outward to multiples of 2^-bits.
Enclosure outward(const Enclosure& a, unsigned bits);

/// e from sum_{j<=terms} 1/j! with the tail bounded by 1/(terms! * terms).
Enclosure e_enclosure(unsigned terms = 40);
/// exp(x) with absolute-then-relative precision about 2^-bits.
Enclosure exp_enclosure(const Rational& x, unsigned bits = 96);
/// log2(x) for x > 0, width at most 2^-bits.
Enclosure log2_enclosure(const Rational& x, unsigned bits = 64);
/// sqrt(x) for x >= 0, width at most 2^-bits relative to the denominator.
Enclosure sqrt_enclosure(const Rational& x, unsigned bits = 96);

Verdict less(const Enclosure& a, const Enclosure& b);
Verdict less_equal(const Enclosure& a, const Enclosure& b);

/// Re-evaluates `check(bits)` with doubling precision until it is decided
/// or `max_bits` is exceeded.
Verdict refine(const std::function<Verdict(unsigned)>& check, unsigned start_bits = 64,
               unsigned max_bits = 4096);

}  // namespace tperm
