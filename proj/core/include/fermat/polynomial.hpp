#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "fermat/scalar.hpp"

namespace fermat {

// Dense univariate polynomial, coefficients in ascending degree.
template <class C>
class UniPoly {
 public:
  UniPoly() = default;
  explicit UniPoly(std::vector<C> coefficients) : c_(std::move(coefficients)) { trim(); }

  static UniPoly constant(C c) { return UniPoly(std::vector<C>{std::move(c)}); }
  static UniPoly monomial(C c, std::size_t degree) {
    std::vector<C> v(degree + 1, C(0));
    v[degree] = std::move(c);
    return UniPoly(std::move(v));
  }

  int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const noexcept { return c_.empty(); }
  const std::vector<C>& coefficients() const noexcept { return c_; }
  C coefficient(std::size_t k) const { return k < c_.size() ? c_[k] : C(0); }
  const C& leading() const { return c_.back(); }

  C operator()(const C& x) const {
    C acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  // n-th derivative evaluated at x without materializing it.
  C derivative_at(unsigned n, const C& x) const {
    if (static_cast<int>(n) > degree()) return C(0);
    C acc(0);
    for (std::size_t k = c_.size(); k-- > n;) {
      C falling(1);
      for (std::size_t j = 0; j < n; ++j) falling *= C(static_cast<unsigned long>(k - j));
      acc = acc * x + c_[k] * falling;
    }
    return acc;
  }

  UniPoly derivative(unsigned n = 1) const {
    if (static_cast<int>(n) > degree()) return UniPoly();
    std::vector<C> out(c_.size() - n);
    for (std::size_t k = n; k < c_.size(); ++k) {
      C falling(1);
      for (std::size_t j = 0; j < n; ++j) falling *= C(static_cast<unsigned long>(k - j));
      out[k - n] = c_[k] * falling;
    }
    return UniPoly(std::move(out));
  }

  UniPoly scale(const C& r) const {
    std::vector<C> out = c_;
    for (auto& c : out) c *= r;
    return UniPoly(std::move(out));
  }

  friend UniPoly operator+(const UniPoly& a, const UniPoly& b) {
    std::vector<C> out(std::max(a.c_.size(), b.c_.size()), C(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) out[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) out[i] += b.c_[i];
    return UniPoly(std::move(out));
  }
  friend UniPoly operator-(const UniPoly& a, const UniPoly& b) { return a + b.scale(C(-1)); }
  friend UniPoly operator*(const UniPoly& a, const UniPoly& b) {
    if (a.is_zero() || b.is_zero()) return UniPoly();
    std::vector<C> out(a.c_.size() + b.c_.size() - 1, C(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      for (std::size_t j = 0; j < b.c_.size(); ++j) out[i + j] += a.c_[i] * b.c_[j];
    }
    return UniPoly(std::move(out));
  }
  friend bool operator==(const UniPoly& a, const UniPoly& b) { return a.c_ == b.c_; }

  template <class D, class F>
  UniPoly<D> map(F&& f) const {
    std::vector<D> out;
    out.reserve(c_.size());
    for (const auto& c : c_) out.push_back(f(c));
    return UniPoly<D>(std::move(out));
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }

  std::vector<C> c_;
};

using QPoly = UniPoly<Rational>;

// Exact Euclidean algorithms over ℚ.
std::pair<QPoly, QPoly> divmod(const QPoly& a, const QPoly& b);
QPoly monic(const QPoly& p);
QPoly gcd(const QPoly& a, const QPoly& b);
QPoly squarefree_part(const QPoly& p);

// Sparse multivariate polynomial with rational coefficients.
class MultiPoly {
 public:
  using Monomial = std::vector<unsigned>;

  explicit MultiPoly(std::size_t arity = 1) : arity_(arity) {}

  static MultiPoly constant(std::size_t arity, const Rational& c);
  static MultiPoly variable(std::size_t arity, std::size_t index);

  std::size_t arity() const noexcept { return arity_; }
  const std::map<Monomial, Rational>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }

  void add_term(Monomial exponents, const Rational& c);

  unsigned degree_in(std::size_t var) const;
  unsigned total_degree_in(std::size_t first, std::size_t last) const;  // variables [first, last)

  MultiPoly derivative(std::span<const unsigned> index) const;
  MultiPoly pow(unsigned n) const;

  friend MultiPoly operator+(const MultiPoly& a, const MultiPoly& b);
  friend MultiPoly operator-(const MultiPoly& a, const MultiPoly& b);
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
  friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
    return a.arity_ == b.arity_ && a.terms_ == b.terms_;
  }

  // D^index h at point.
  template <Scalar S>
  S partial(std::span<const unsigned> index, std::span<const S> point) const {
    check_arity(index.size());
    check_arity(point.size());
    S acc(0);
    for (const auto& [mono, c] : terms_) {
      S term = from_rational<S>(c);
      bool vanishes = false;
      for (std::size_t l = 0; l < arity_ && !vanishes; ++l) {
        if (mono[l] < index[l]) {
          vanishes = true;
          break;
        }
        for (unsigned j = 0; j < index[l]; ++j) term *= S(mono[l] - j);
        term *= ipow(point[l], mono[l] - index[l]);
      }
      if (!vanishes) acc += term;
    }
    return acc;
  }

  template <Scalar S>
  S evaluate(std::span<const S> point) const {
    Monomial zero(arity_, 0);
    return partial<S>(zero, point);
  }

  // Substitutes the first arity-1 variables, leaving a polynomial in the last.
  template <Scalar S>
  UniPoly<S> slice_last(std::span<const S> prefix) const {
    check_arity(prefix.size() + 1);
    std::vector<S> c(degree_in(arity_ - 1) + 1, S(0));
    for (const auto& [mono, coef] : terms_) {
      S term = from_rational<S>(coef);
      for (std::size_t l = 0; l + 1 < arity_; ++l) term *= ipow(prefix[l], mono[l]);
      c[mono[arity_ - 1]] += term;
    }
    return UniPoly<S>(std::move(c));
  }

 private:
  void check_arity(std::size_t n) const;

  std::size_t arity_;
  std::map<Monomial, Rational> terms_;
};

}  // namespace fermat
