#pragma once

#include <fermat/fermat.hpp>

#include <map>
#include <random>
#include <vector>

namespace fermat::testing {

using FR = FermatReal<Rational>;

inline std::mt19937_64& rng() {
  static std::mt19937_64 engine(20240611);
  return engine;
}

inline long uniform(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng()); }

inline bool coin() { return uniform(0, 1) == 1; }

// p/q with |p/q| ≤ bound.
inline Rational rational(long bound = 10, long max_den = 4) {
  long q = uniform(1, max_den);
  return Rational(uniform(-bound * q, bound * q), q);
}

inline Rational nonzero_rational(long bound = 10, long max_den = 4) {
  for (;;) {
    Rational r = rational(bound, max_den);
    if (r != 0) return r;
  }
}

inline Rational exponent(long max_den = 12) {
  long q = uniform(1, max_den);
  return Rational(uniform(1, q), q);
}

inline FR random_fr(std::size_t max_terms = 4, long max_den = 12, long bound = 10, bool infinitesimal = false) {
  std::vector<FR::RawTerm> raw;
  std::size_t n = static_cast<std::size_t>(uniform(0, static_cast<long>(max_terms)));
  for (std::size_t i = 0; i < n; ++i) raw.push_back({exponent(max_den), nonzero_rational(bound)});
  return FR::normalize(infinitesimal ? Rational(0) : rational(bound), std::move(raw));
}

// Exponent 0 holds the standard part.
using TermMap = std::map<Rational, Rational>;

inline TermMap to_map(const FR& x) {
  TermMap m;
  if (x.standard_part() != 0) m[Rational(0)] = x.standard_part();
  for (const auto& term : x.terms()) m[term.exponent.value()] = term.coefficient;
  return m;
}

inline TermMap convolve(const TermMap& x, const TermMap& y) {
  TermMap out;
  for (const auto& [a, p] : x) {
    for (const auto& [b, q] : y) out[a + b] += p * q;
  }
  std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
  return out;
}

inline FR from_map(const TermMap& m) {
  Rational standard(0);
  std::vector<FR::RawTerm> raw;
  for (const auto& [e, c] : m) {
    if (e == 0) {
      standard = c;
    } else if (e <= 1) {
      raw.push_back({e, c});
    }
  }
  return FR::normalize(standard, std::move(raw));
}

// Lexicographic order on (standard, coefficients by ascending exponent).
inline int lex_compare(const FR& x, const FR& y) {
  TermMap d = to_map(x);
  for (const auto& [e, c] : to_map(y)) d[e] -= c;
  for (const auto& [e, c] : d) {
    if (c != 0) return c < 0 ? -1 : 1;
  }
  return 0;
}

// Coefficients of Σ c_k (u - a)^k in the monomial basis.
inline std::vector<Rational> shifted_to_monomial(const std::vector<Rational>& c, const Rational& a) {
  std::vector<Rational> out(c.size(), Rational(0));
  for (std::size_t k = 0; k < c.size(); ++k) {
    Rational binom(1);
    for (std::size_t i = 0; i <= k; ++i) {
      // binom = C(k, i); term c_k C(k,i) u^i (-a)^(k-i)
      Rational power(1);
      for (std::size_t e = 0; e < k - i; ++e) power *= -a;
      out[i] += c[k] * binom * power;
      binom = binom * Rational(static_cast<long>(k - i)) / Rational(static_cast<long>(i + 1));
    }
  }
  return out;
}

inline Rational horner(const std::vector<Rational>& c, const Rational& x) {
  Rational acc(0);
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
  return acc;
}

}  // namespace fermat::testing
