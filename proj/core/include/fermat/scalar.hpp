#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include <optional>
#include <string>
#include <string_view>

#include "fermat/error.hpp"

namespace fermat {

namespace mp = boost::multiprecision;

using BigInt = mp::number<mp::gmp_int, mp::et_off>;
using Rational = mp::number<mp::gmp_rational, mp::et_off>;
using BigFloat = mp::number<mp::mpfr_float_backend<0>, mp::et_off>;

inline constexpr unsigned default_precision_digits = 50;

// Sets the BigFloat working precision (decimal digits) for the current
// scope. The precision is process-wide; values created inside the scope
// keep their precision after it ends.
class PrecisionScope {
 public:
  explicit PrecisionScope(unsigned digits) : saved_(BigFloat::default_precision()) {
    BigFloat::default_precision(digits);
  }
  ~PrecisionScope() { BigFloat::default_precision(saved_); }
  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;

 private:
  unsigned saved_;
};

// Accepts "p", "p/q", and decimals with an optional exponent ("1.25e-3").
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& q);
std::string to_string(const BigFloat& x);

BigFloat to_bigfloat(const Rational& q);
Rational to_rational(const BigFloat& x);  // exact: every finite binary float is rational

// Real m-th root when it is rational; negative radicands allowed for odd m.
std::optional<Rational> exact_root(const Rational& x, unsigned m);

Rational ipow(const Rational& base, unsigned n);
BigFloat ipow(const BigFloat& base, unsigned n);
Rational factorial(unsigned n);

template <class S>
struct ScalarTraits;

template <>
struct ScalarTraits<Rational> {
  static constexpr bool exact = true;
  static constexpr std::string_view backend_name = "exact";

  static Rational from_rational(const Rational& q) { return q; }
  static Rational to_rational(const Rational& x) { return x; }
  static bool negligible(const Rational& x, const Rational& = Rational(1)) { return x == 0; }
  static std::optional<Rational> root(const Rational& x, unsigned m) { return exact_root(x, m); }
  static Rational pow(const Rational& base, const Rational& exponent);
  static std::optional<Rational> sqrt(const Rational& x) { return exact_root(x, 2); }
  static std::string str(const Rational& x) { return to_string(x); }
  static Rational parse(std::string_view text) { return parse_rational(text); }
};

template <>
struct ScalarTraits<BigFloat> {
  static constexpr bool exact = false;
  static constexpr std::string_view backend_name = "float";

  static BigFloat from_rational(const Rational& q) { return to_bigfloat(q); }
  static Rational to_rational(const BigFloat& x) { return fermat::to_rational(x); }
  // 10^-(digits/2), the residual tolerance of the float backend.
  static BigFloat tolerance();
  static bool negligible(const BigFloat& x, const BigFloat& scale = BigFloat(1));
  static std::optional<BigFloat> root(const BigFloat& x, unsigned m);
  static BigFloat pow(const BigFloat& base, const Rational& exponent);
  static std::optional<BigFloat> sqrt(const BigFloat& x);
  static std::string str(const BigFloat& x) { return to_string(x); }
  static BigFloat parse(std::string_view text) { return to_bigfloat(parse_rational(text)); }
};

template <class S>
concept Scalar = requires { ScalarTraits<S>::exact; };

template <Scalar S>
int sign(const S& x) {
  return x > 0 ? 1 : (x < 0 ? -1 : 0);
}

template <Scalar S>
S abs_value(const S& x) {
  return x < 0 ? S(-x) : x;
}

template <Scalar S>
S from_rational(const Rational& q) {
  return ScalarTraits<S>::from_rational(q);
}

}  // namespace fermat
