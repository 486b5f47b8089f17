#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <limits>
#include <utility>
#include <vector>

#include "fermat/exponent.hpp"
#include "fermat/scalar.hpp"

namespace fermat {

enum class Ordering3 { less, equal, greater };

inline std::string_view symbol(Ordering3 o) {
  switch (o) {
    case Ordering3::less: return "<";
    case Ordering3::equal: return "=";
    case Ordering3::greater: return ">";
  }
  return "?";
}

// °x + Σ αᵢ t^{aᵢ}, kept in decomposition form: exponents strictly
// increasing in (0, 1] and every coefficient nonzero.
template <Scalar S>
class FermatReal {
 public:
  struct Term {
    Exponent exponent;
    S coefficient;

    friend bool operator==(const Term& a, const Term& b) {
      return a.exponent == b.exponent && a.coefficient == b.coefficient;
    }
  };

  // Quasi-decomposition input: any exponent >= 0 and any coefficient.
  struct RawTerm {
    Rational exponent;
    S coefficient;
  };

  FermatReal() : standard_(0) {}
  explicit FermatReal(S standard) : standard_(std::move(standard)) {}

  static FermatReal normalize(S standard, std::vector<RawTerm> raw) {
    std::vector<Term> terms;
    std::sort(raw.begin(), raw.end(),
              [](const RawTerm& a, const RawTerm& b) { return a.exponent < b.exponent; });
    for (auto& r : raw) {
      if (r.exponent < 0) {
        fail(ErrorCode::invalid_argument, "negative exponent " + to_string(r.exponent));
      }
      if (r.exponent > 1) break;
      if (r.exponent == 0) {
        standard += r.coefficient;
        continue;
      }
      if (!terms.empty() && terms.back().exponent.value() == r.exponent) {
        terms.back().coefficient += r.coefficient;
      } else {
        terms.push_back(Term{Exponent(r.exponent), std::move(r.coefficient)});
      }
    }
    std::erase_if(terms, [](const Term& t) { return t.coefficient == 0; });
    return FermatReal(std::move(standard), std::move(terms));
  }

  // c·t^e; e = 0 gives the real c and e > 1 gives 0.
  static FermatReal monomial(S coefficient, const Rational& exponent) {
    std::vector<RawTerm> raw;
    raw.push_back(RawTerm{exponent, std::move(coefficient)});
    return normalize(S(0), std::move(raw));
  }

  static FermatReal t() { return monomial(S(1), Rational(1)); }

  const S& standard_part() const noexcept { return standard_; }
  const std::vector<Term>& terms() const noexcept { return terms_; }
  FermatReal infinitesimal_part() const { return FermatReal(S(0), terms_); }

  bool is_real() const noexcept { return terms_.empty(); }
  bool is_zero() const { return terms_.empty() && standard_ == 0; }
  bool is_infinitesimal() const { return standard_ == 0; }

  // Coefficient of t^e in the decomposition (0 when absent).
  S coefficient(const Rational& e) const {
    if (e == 0) return standard_;
    for (const auto& term : terms_) {
      if (term.exponent.value() == e) return term.coefficient;
    }
    return S(0);
  }

  // Smallest exponent of δx; δx must be nonzero.
  const Term& leading_term() const {
    if (terms_.empty()) fail(ErrorCode::invalid_argument, "real number has no infinitesimal term");
    return terms_.front();
  }

  FermatReal operator-() const {
    std::vector<Term> terms = terms_;
    for (auto& term : terms) term.coefficient = -term.coefficient;
    return FermatReal(S(-standard_), std::move(terms));
  }

  friend FermatReal operator+(const FermatReal& x, const FermatReal& y) {
    return combine(x, y, false);
  }
  friend FermatReal operator-(const FermatReal& x, const FermatReal& y) {
    return combine(x, y, true);
  }

  friend FermatReal operator*(const FermatReal& x, const FermatReal& y) {
    std::vector<RawTerm> raw;
    raw.reserve((x.terms_.size() + 1) * (y.terms_.size() + 1));
    if (x.standard_ != 0) {
      for (const auto& b : y.terms_) raw.push_back({b.exponent.value(), x.standard_ * b.coefficient});
    }
    if (y.standard_ != 0) {
      for (const auto& a : x.terms_) raw.push_back({a.exponent.value(), y.standard_ * a.coefficient});
    }
    for (const auto& a : x.terms_) {
      for (const auto& b : y.terms_) {
        Rational e = a.exponent.value() + b.exponent.value();
        if (e > 1) break;
        raw.push_back({std::move(e), a.coefficient * b.coefficient});
      }
    }
    return normalize(x.standard_ * y.standard_, std::move(raw));
  }

  FermatReal& operator+=(const FermatReal& y) { return *this = *this + y; }
  FermatReal& operator-=(const FermatReal& y) { return *this = *this - y; }
  FermatReal& operator*=(const FermatReal& y) { return *this = *this * y; }

  FermatReal scale(const S& r) const {
    if (r == 0) return FermatReal();
    std::vector<Term> terms = terms_;
    for (auto& term : terms) term.coefficient *= r;
    std::erase_if(terms, [](const Term& t) { return t.coefficient == 0; });
    return FermatReal(standard_ * r, std::move(terms));
  }

  friend bool operator==(const FermatReal& x, const FermatReal& y) {
    return x.standard_ == y.standard_ && x.terms_ == y.terms_;
  }

  friend std::strong_ordering operator<=>(const FermatReal& x, const FermatReal& y) {
    switch (compare(x, y)) {
      case Ordering3::less: return std::strong_ordering::less;
      case Ordering3::equal: return std::strong_ordering::equal;
      case Ordering3::greater: return std::strong_ordering::greater;
    }
    return std::strong_ordering::equal;
  }

 private:
  FermatReal(S standard, std::vector<Term> terms)
      : standard_(std::move(standard)), terms_(std::move(terms)) {}

  static FermatReal combine(const FermatReal& x, const FermatReal& y, bool subtract) {
    std::vector<Term> out;
    out.reserve(x.terms_.size() + y.terms_.size());
    std::size_t i = 0, j = 0;
    auto take_y = [&](const Term& b) {
      out.push_back(Term{b.exponent, subtract ? S(-b.coefficient) : b.coefficient});
    };
    while (i < x.terms_.size() || j < y.terms_.size()) {
      if (j == y.terms_.size() || (i < x.terms_.size() && x.terms_[i].exponent < y.terms_[j].exponent)) {
        out.push_back(x.terms_[i++]);
      } else if (i == x.terms_.size() || y.terms_[j].exponent < x.terms_[i].exponent) {
        take_y(y.terms_[j++]);
      } else {
        S c = subtract ? S(x.terms_[i].coefficient - y.terms_[j].coefficient)
                       : S(x.terms_[i].coefficient + y.terms_[j].coefficient);
        if (c != 0) out.push_back(Term{x.terms_[i].exponent, std::move(c)});
        ++i;
        ++j;
      }
    }
    S standard = subtract ? S(x.standard_ - y.standard_) : S(x.standard_ + y.standard_);
    return FermatReal(std::move(standard), std::move(out));
  }

  S standard_;
  std::vector<Term> terms_;
};

// Dictionary order on (standard part, coefficients by ascending exponent).
template <Scalar S>
Ordering3 compare(const FermatReal<S>& x, const FermatReal<S>& y) {
  auto cmp = [](const S& a, const S& b) {
    return a < b ? Ordering3::less : (b < a ? Ordering3::greater : Ordering3::equal);
  };
  if (auto c = cmp(x.standard_part(), y.standard_part()); c != Ordering3::equal) return c;
  const auto& xs = x.terms();
  const auto& ys = y.terms();
  std::size_t i = 0, j = 0;
  const S zero(0);
  while (i < xs.size() || j < ys.size()) {
    Ordering3 c;
    if (j == ys.size() || (i < xs.size() && xs[i].exponent < ys[j].exponent)) {
      c = cmp(xs[i++].coefficient, zero);
    } else if (i == xs.size() || ys[j].exponent < xs[i].exponent) {
      c = cmp(zero, ys[j++].coefficient);
    } else {
      c = cmp(xs[i++].coefficient, ys[j++].coefficient);
    }
    if (c != Ordering3::equal) return c;
  }
  return Ordering3::equal;
}

template <Scalar S>
FermatReal<S> pow_nat(const FermatReal<S>& x, std::uint64_t n) {
  FermatReal<S> result(S(1));
  FermatReal<S> base = x;
  while (n > 0) {
    if (n & 1u) result *= base;
    n >>= 1;
    if (n > 0) base *= base;
  }
  return result;
}

template <Scalar S>
FermatReal<S> abs(const FermatReal<S>& x) {
  return compare(x, FermatReal<S>()) == Ordering3::less ? -x : x;
}

// 1/b₁ for the smallest exponent b₁ of δx, and 0 when x is real.
template <Scalar S>
Rational order_omega(const FermatReal<S>& x) {
  if (x.is_real()) return Rational(0);
  return 1 / x.terms().front().exponent.value();
}

template <Scalar S>
std::uint64_t nilpotency_index(const FermatReal<S>& x) {
  if (x.is_real()) return 1;
  Rational w = order_omega(x);
  BigInt floor_w = mp::numerator(w) / mp::denominator(w);
  if (floor_w >= BigInt(std::numeric_limits<std::uint64_t>::max())) {
    fail(ErrorCode::invalid_argument, "nilpotency index does not fit in 64 bits");
  }
  return floor_w.convert_to<std::uint64_t>() + 1;
}

template <Scalar S>
S eval_representative(const FermatReal<S>& x, const S& t0) {
  if (!(t0 > 0)) fail(ErrorCode::invalid_argument, "representatives are evaluated at t0 > 0");
  S value = x.standard_part();
  for (const auto& term : x.terms()) {
    value += term.coefficient * ScalarTraits<S>::pow(t0, term.exponent.value());
  }
  return value;
}

}  // namespace fermat
