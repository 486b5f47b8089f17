#include "fermat/scalar.hpp"

#include <cctype>

namespace fermat {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

// Leading zeros would select octal in the string constructor.
BigInt parse_integer(std::string_view digits) {
  std::size_t nz = digits.find_first_not_of('0');
  if (nz == std::string_view::npos) return BigInt(0);
  return BigInt(std::string(digits.substr(nz)));
}

BigInt pow10(unsigned n) { return mp::pow(BigInt(10), n); }

[[noreturn]] void bad_number(std::string_view text) {
  fail(ErrorCode::invalid_argument, "malformed number '" + std::string(text) + "'");
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view s = text;
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (s.empty()) bad_number(text);

  Rational value;
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    auto num = s.substr(0, slash);
    auto den = s.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) bad_number(text);
    BigInt d = parse_integer(den);
    if (d == 0) fail(ErrorCode::invalid_argument, "zero denominator in '" + std::string(text) + "'");
    value = Rational(parse_integer(num), d);
  } else {
    std::string_view mantissa = s;
    long long exp10 = 0;
    if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
      mantissa = s.substr(0, e);
      std::string_view ex = s.substr(e + 1);
      bool eneg = false;
      if (!ex.empty() && (ex.front() == '-' || ex.front() == '+')) {
        eneg = ex.front() == '-';
        ex.remove_prefix(1);
      }
      if (!all_digits(ex) || ex.size() > 4) bad_number(text);
      exp10 = std::stoll(std::string(ex));
      if (eneg) exp10 = -exp10;
    }
    std::string_view int_part = mantissa;
    std::string_view frac_part;
    if (auto dot = mantissa.find('.'); dot != std::string_view::npos) {
      int_part = mantissa.substr(0, dot);
      frac_part = mantissa.substr(dot + 1);
    }
    if (int_part.empty() && frac_part.empty()) bad_number(text);
    if (!int_part.empty() && !all_digits(int_part)) bad_number(text);
    if (!frac_part.empty() && !all_digits(frac_part)) bad_number(text);
    std::string digits = std::string(int_part) + std::string(frac_part);
    BigInt n = parse_integer(digits);
    exp10 -= static_cast<long long>(frac_part.size());
    if (exp10 >= 0) {
      value = Rational(n * pow10(static_cast<unsigned>(exp10)));
    } else {
      value = Rational(n, pow10(static_cast<unsigned>(-exp10)));
    }
  }
  return negative ? Rational(-value) : value;
}

std::string to_string(const Rational& q) { return q.str(); }

std::string to_string(const BigFloat& x) {
  if (x == 0) return "0";
  return x.str(static_cast<std::streamsize>(x.precision()), std::ios_base::fmtflags(0));
}

BigFloat to_bigfloat(const Rational& q) {
  BigFloat r;
  mpfr_set_q(r.backend().data(), q.backend().data(), MPFR_RNDN);
  return r;
}

Rational to_rational(const BigFloat& x) {
  if (!mp::isfinite(x)) fail(ErrorCode::domain_error, "non-finite float has no rational value");
  Rational q;
  mpfr_get_q(q.backend().data(), x.backend().data());
  return q;
}

std::optional<Rational> exact_root(const Rational& x, unsigned m) {
  if (m == 0) fail(ErrorCode::invalid_argument, "root of order 0");
  if (x == 0) return Rational(0);
  bool negative = x < 0;
  if (negative && m % 2 == 0) return std::nullopt;
  BigInt num = mp::numerator(x);
  BigInt den = mp::denominator(x);
  if (negative) num = -num;
  BigInt rn, rd;
  if (mpz_root(rn.backend().data(), num.backend().data(), m) == 0) return std::nullopt;
  if (mpz_root(rd.backend().data(), den.backend().data(), m) == 0) return std::nullopt;
  Rational r(rn, rd);
  return negative ? Rational(-r) : r;
}

Rational ipow(const Rational& base, unsigned n) {
  Rational result(1);
  Rational b = base;
  while (n > 0) {
    if (n & 1u) result *= b;
    n >>= 1;
    if (n > 0) b *= b;
  }
  return result;
}

BigFloat ipow(const BigFloat& base, unsigned n) {
  BigFloat result(1);
  BigFloat b = base;
  while (n > 0) {
    if (n & 1u) result *= b;
    n >>= 1;
    if (n > 0) b *= b;
  }
  return result;
}

Rational factorial(unsigned n) {
  BigInt r(1);
  for (unsigned i = 2; i <= n; ++i) r *= i;
  return Rational(r);
}

Rational ScalarTraits<Rational>::pow(const Rational& base, const Rational& exponent) {
  BigInt p = mp::numerator(exponent);
  BigInt q = mp::denominator(exponent);
  if (q > 1u << 20 || mp::abs(p) > 1u << 20) {
    fail(ErrorCode::invalid_argument, "exponent too large for exact evaluation");
  }
  if (base <= 0 && q != 1) {
    fail(ErrorCode::domain_error, "fractional power of a non-positive base");
  }
  auto r = exact_root(base, q.convert_to<unsigned>());
  if (!r) {
    fail(ErrorCode::exact_backend_root_needed,
         "power " + to_string(base) + "^(" + to_string(exponent) + ") is irrational");
  }
  Rational v = ipow(*r, mp::abs(p).convert_to<unsigned>());
  if (p < 0) {
    if (v == 0) fail(ErrorCode::domain_error, "negative power of zero");
    v = 1 / v;
  }
  return v;
}

BigFloat ScalarTraits<BigFloat>::tolerance() {
  unsigned digits = BigFloat::default_precision();
  BigFloat ten(10);
  return mp::pow(ten, -static_cast<int>(digits / 2));
}

bool ScalarTraits<BigFloat>::negligible(const BigFloat& x, const BigFloat& scale) {
  BigFloat s = mp::abs(scale);
  if (s < 1) s = 1;
  return mp::abs(x) <= tolerance() * s;
}

std::optional<BigFloat> ScalarTraits<BigFloat>::root(const BigFloat& x, unsigned m) {
  if (m == 0) fail(ErrorCode::invalid_argument, "root of order 0");
  if (x == 0) return BigFloat(0);
  if (x < 0 && m % 2 == 0) return std::nullopt;
  BigFloat r;
  mpfr_rootn_ui(r.backend().data(), mp::abs(x).backend().data(), m, MPFR_RNDN);
  return x < 0 ? BigFloat(-r) : r;
}

BigFloat ScalarTraits<BigFloat>::pow(const BigFloat& base, const Rational& exponent) {
  if (base < 0 && mp::denominator(exponent) != 1) {
    fail(ErrorCode::domain_error, "fractional power of a negative base");
  }
  if (mp::denominator(exponent) == 1 && mp::abs(mp::numerator(exponent)) < (1u << 20)) {
    BigInt p = mp::numerator(exponent);
    BigFloat v = ipow(base, mp::abs(p).convert_to<unsigned>());
    return p < 0 ? BigFloat(1 / v) : v;
  }
  return mp::pow(base, to_bigfloat(exponent));
}

std::optional<BigFloat> ScalarTraits<BigFloat>::sqrt(const BigFloat& x) {
  if (x < 0) return std::nullopt;
  return mp::sqrt(x);
}

}  // namespace fermat
