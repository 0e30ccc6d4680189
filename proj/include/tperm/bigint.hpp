#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace tperm {

/// Exact nonnegative counts. Factorials overflow 64 bits almost immediately.
using BigCount = mpz_class;
/// Exact rationals for thresholds, ratios and bound evaluation.
using Rational = mpq_class;

BigCount factorial(long n);
/// C(n, k); zero outside 0 <= k <= n.
BigCount binomial(long n, long k);
BigCount power(const BigCount& base, unsigned long exp);
/// base^exp for any integer exp; throws on 0^negative.
Rational power(const Rational& base, long exp);

std::string to_decimal(const BigCount& v);
/// "p/q", or "p" when the denominator is 1.
std::string to_string(const Rational& v);
/// Accepts "7", "-3/4", "1.25" and "2.5e-3".
Rational parse_rational(std::string_view text);

/// Smallest integer >= v and largest integer <= v.
BigCount ceil(const Rational& v);
BigCount floor(const Rational& v);

std::uint64_t to_u64(const BigCount& v);

}  // namespace tperm
