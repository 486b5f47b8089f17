#pragma once

#include "gen.hpp"

namespace fermat::testing {

struct OrderInstance {
  std::vector<Rational> coefficients;  // monomial basis
  Rational a;
  unsigned m;
  Rational dm;  // f⁽ᵐ⁾(a)
};

// f(u) = c₀ + Σ_{k=m}^{degree} c_k (u - a)^k with sgn c_m = sign.
inline OrderInstance order_instance(unsigned m, int sign_m, unsigned max_degree = 6) {
  Rational a = rational(3, 2);
  unsigned degree = static_cast<unsigned>(uniform(m, std::max<long>(m, max_degree)));
  std::vector<Rational> shifted(degree + 1, Rational(0));
  shifted[0] = rational(5, 2);
  shifted[m] = abs_value(nonzero_rational(4, 3)) * sign_m;
  for (unsigned k = m + 1; k <= degree; ++k) shifted[k] = rational(4, 3);
  return {shifted_to_monomial(shifted, a), a, m, shifted[m] * factorial(m)};
}

inline FR slice_point(const Rational& a, std::size_t max_terms = 4, long max_den = 6, long bound = 3) {
  return FR(a) + random_fr(max_terms, max_den, bound, true);
}

// Predicted dictionary order of •f(x1) against •f(x2) for x1 < x2 on a + D_∞,
// from the leading term of •f(x2) - •f(x1).
inline Ordering3 predicted_slice_order(unsigned m, const Rational& dm, const FR& x1, const FR& x2) {
  TermMap p = to_map(x1 - FR(x1.standard_part()));
  TermMap q = to_map(x2 - FR(x2.standard_part()));
  std::map<Rational, std::pair<Rational, Rational>> merged;
  for (const auto& [e, c] : p) merged[e].first = c;
  for (const auto& [e, c] : q) merged[e].second = c;
  if (merged.empty()) return Ordering3::equal;
  const Rational a1 = merged.begin()->first;
  const Rational alpha1 = merged.begin()->second.first;
  std::size_t k = 0;
  for (const auto& [e, ab] : merged) {
    if (ab.first != ab.second) {
      Rational coefficient, degree;
      if (k == 0) {
        coefficient = dm / factorial(m) * (ipow(ab.second, m) - ipow(ab.first, m));
        degree = m * e;
      } else {
        coefficient = dm / factorial(m - 1) * ipow(alpha1, m - 1) * (ab.second - ab.first);
        degree = (m - 1) * a1 + e;
      }
      if (degree > 1 || coefficient == 0) return Ordering3::equal;
      return coefficient < 0 ? Ordering3::greater : Ordering3::less;
    }
    ++k;
  }
  return Ordering3::equal;
}

// Grid for the membership/solver cross-check.
struct GridFunction {
  const char* name;
  std::vector<Rational> coefficients;
};

inline std::vector<GridFunction> grid_functions() {
  return {{"u^2", {0, 0, 1}}, {"u^3", {0, 0, 0, 1}}, {"u^3+u^2", {0, 0, 1, 1}}, {"u^4-u^2", {0, 0, -1, 0, 1}}};
}

// Every f(a) + Σ c_e t^e with e in {1/3, 1/2, 2/3, 1} and c_e in {0, ±1, ±2}.
inline std::vector<FR> grid_targets(const Rational& base) {
  const std::vector<Rational> exps{Rational(1, 3), Rational(1, 2), Rational(2, 3), Rational(1)};
  const std::vector<long> coefs{0, -2, -1, 1, 2};
  std::vector<FR> out;
  for (std::size_t code = 0; code < 625; ++code) {
    std::vector<FR::RawTerm> raw;
    std::size_t c = code;
    for (const auto& e : exps) {
      long v = coefs[c % 5];
      c /= 5;
      if (v != 0) raw.push_back({e, Rational(v)});
    }
    out.push_back(FR::normalize(base, std::move(raw)));
  }
  return out;
}

inline bool is_perfect_power(const BigInt& n, unsigned m) {
  if (n < 0) return m % 2 == 1 && is_perfect_power(BigInt(-n), m);
  BigInt lo(0), hi(n + 1);
  while (hi - lo > 1) {
    BigInt mid = (lo + hi) / 2;
    if (mp::pow(mid, m) <= n) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return mp::pow(lo, m) == n;
}

inline bool is_rational_power(const Rational& q, unsigned m) {
  return is_perfect_power(mp::numerator(q), m) && is_perfect_power(mp::denominator(q), m);
}

}  // namespace fermat::testing
