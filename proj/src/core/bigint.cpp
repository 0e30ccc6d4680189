#include "tperm/bigint.hpp"

#include "tperm/errors.hpp"

#include <cctype>

namespace tperm {

BigCount factorial(long n) {
  if (n < 0) throw HypothesisError("factorial of a negative number");
  BigCount out;
  mpz_fac_ui(out.get_mpz_t(), static_cast<unsigned long>(n));
  return out;
}

BigCount binomial(long n, long k) {
  if (n < 0 || k < 0 || k > n) return 0;
  BigCount out;
  mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return out;
}

BigCount power(const BigCount& base, unsigned long exp) {
  BigCount out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exp);
  return out;
}

Rational power(const Rational& base, long exp) {
  if (exp >= 0) {
    Rational out(power(BigCount(base.get_num()), static_cast<unsigned long>(exp)),
                 power(BigCount(base.get_den()), static_cast<unsigned long>(exp)));
    out.canonicalize();
    return out;
  }
  if (base == 0) throw HypothesisError("zero raised to a negative power");
  return 1 / power(base, -exp);
}

std::string to_decimal(const BigCount& v) { return v.get_str(10); }

std::string to_string(const Rational& value) {
  Rational v = value;
  v.canonicalize();
  if (v.get_den() == 1) return v.get_num().get_str(10);
  return v.get_num().get_str(10) + "/" + v.get_den().get_str(10);
}

Rational parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw ValidationError("empty rational");
  try {
    if (auto slash = s.find('/'); slash != std::string::npos) {
      Rational out(BigCount(s.substr(0, slash), 10), BigCount(s.substr(slash + 1), 10));
      if (out.get_den() == 0) throw ValidationError("zero denominator in '" + s + "'");
      out.canonicalize();
      return out;
    }
    long exp10 = 0;
    if (auto e = s.find_first_of("eE"); e != std::string::npos) {
      exp10 = std::stol(s.substr(e + 1));
      s = s.substr(0, e);
    }
    std::string digits;
    long frac_len = 0;
    bool seen_point = false;
    for (char c : s) {
      if (c == '.') {
        if (seen_point) throw ValidationError("bad number '" + std::string(text) + "'");
        seen_point = true;
      } else {
        if (!(std::isdigit(static_cast<unsigned char>(c)) || ((c == '-' || c == '+') && digits.empty())))
          throw ValidationError("bad number '" + std::string(text) + "'");
        digits.push_back(c);
        if (seen_point) ++frac_len;
      }
    }
    if (digits.empty() || digits == "-" || digits == "+")
      throw ValidationError("bad number '" + std::string(text) + "'");
    if (digits[0] == '+') digits.erase(0, 1);
    Rational out{BigCount(digits, 10)};
    out *= power(Rational(10), exp10 - frac_len);
    out.canonicalize();
    return out;
  } catch (const std::invalid_argument&) {
    throw ValidationError("bad number '" + std::string(text) + "'");
  }
}

BigCount ceil(const Rational& v) {
  BigCount out;
  mpz_cdiv_q(out.get_mpz_t(), v.get_num_mpz_t(), v.get_den_mpz_t());
  return out;
}

BigCount floor(const Rational& v) {
  BigCount out;
  mpz_fdiv_q(out.get_mpz_t(), v.get_num_mpz_t(), v.get_den_mpz_t());
  return out;
}

std::uint64_t to_u64(const BigCount& v) {
  if (v < 0 || mpz_sizeinbase(v.get_mpz_t(), 2) > 64) throw ValidationError("value does not fit in 64 bits");
  std::uint64_t out = 0;
  mpz_export(&out, nullptr, -1, sizeof(out), 0, 0, v.get_mpz_t());
  return out;
}

}  // namespace tperm
