#include "fermat/polynomial.hpp"

#include <algorithm>

namespace fermat {

std::pair<QPoly, QPoly> divmod(const QPoly& a, const QPoly& b) {
  if (b.is_zero()) fail(ErrorCode::invalid_argument, "polynomial division by zero");
  std::vector<Rational> r = a.coefficients();
  int db = b.degree();
  if (a.degree() < db) return {QPoly(), a};
  std::vector<Rational> q(static_cast<std::size_t>(a.degree() - db + 1), Rational(0));
  const Rational& lb = b.leading();
  for (int k = a.degree(); k >= db; --k) {
    Rational c = r[static_cast<std::size_t>(k)] / lb;
    if (c == 0) continue;
    q[static_cast<std::size_t>(k - db)] = c;
    for (int j = 0; j <= db; ++j) {
      r[static_cast<std::size_t>(k - db + j)] -= c * b.coefficients()[static_cast<std::size_t>(j)];
    }
  }
  return {QPoly(std::move(q)), QPoly(std::move(r))};
}

QPoly monic(const QPoly& p) {
  if (p.is_zero()) return p;
  return p.scale(1 / p.leading());
}

QPoly gcd(const QPoly& a, const QPoly& b) {
  QPoly x = a, y = b;
  while (!y.is_zero()) {
    QPoly r = divmod(x, y).second;
    x = std::move(y);
    y = monic(r);
  }
  return monic(x);
}

QPoly squarefree_part(const QPoly& p) {
  if (p.degree() <= 0) return monic(p);
  QPoly g = gcd(p, p.derivative());
  return monic(divmod(p, g).first);
}

MultiPoly MultiPoly::constant(std::size_t arity, const Rational& c) {
  MultiPoly p(arity);
  p.add_term(Monomial(arity, 0), c);
  return p;
}

MultiPoly MultiPoly::variable(std::size_t arity, std::size_t index) {
  if (index >= arity) fail(ErrorCode::invalid_argument, "variable index out of range");
  MultiPoly p(arity);
  Monomial m(arity, 0);
  m[index] = 1;
  p.add_term(std::move(m), Rational(1));
  return p;
}

void MultiPoly::check_arity(std::size_t n) const {
  if (n != arity_) {
    fail(ErrorCode::invalid_argument,
         "expected " + std::to_string(arity_) + " coordinates, got " + std::to_string(n));
  }
}

void MultiPoly::add_term(Monomial exponents, const Rational& c) {
  check_arity(exponents.size());
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(std::move(exponents), c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

unsigned MultiPoly::degree_in(std::size_t var) const {
  unsigned d = 0;
  for (const auto& [mono, c] : terms_) d = std::max(d, mono[var]);
  return d;
}

unsigned MultiPoly::total_degree_in(std::size_t first, std::size_t last) const {
  unsigned d = 0;
  for (const auto& [mono, c] : terms_) {
    unsigned s = 0;
    for (std::size_t l = first; l < last; ++l) s += mono[l];
    d = std::max(d, s);
  }
  return d;
}

MultiPoly MultiPoly::derivative(std::span<const unsigned> index) const {
  check_arity(index.size());
  MultiPoly out(arity_);
  for (const auto& [mono, c] : terms_) {
    Monomial m = mono;
    Rational coef = c;
    bool vanishes = false;
    for (std::size_t l = 0; l < arity_; ++l) {
      if (m[l] < index[l]) {
        vanishes = true;
        break;
      }
      for (unsigned j = 0; j < index[l]; ++j) coef *= m[l] - j;
      m[l] -= index[l];
    }
    if (!vanishes) out.add_term(std::move(m), coef);
  }
  return out;
}

MultiPoly MultiPoly::pow(unsigned n) const {
  MultiPoly result = constant(arity_, Rational(1));
  MultiPoly base = *this;
  while (n > 0) {
    if (n & 1u) result = result * base;
    n >>= 1;
    if (n > 0) base = base * base;
  }
  return result;
}

MultiPoly operator+(const MultiPoly& a, const MultiPoly& b) {
  a.check_arity(b.arity_);
  MultiPoly out = a;
  for (const auto& [mono, c] : b.terms_) out.add_term(mono, c);
  return out;
}

MultiPoly operator-(const MultiPoly& a, const MultiPoly& b) {
  a.check_arity(b.arity_);
  MultiPoly out = a;
  for (const auto& [mono, c] : b.terms_) out.add_term(mono, -c);
  return out;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
  a.check_arity(b.arity_);
  MultiPoly out(a.arity_);
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) {
      MultiPoly::Monomial m(a.arity_);
      for (std::size_t l = 0; l < a.arity_; ++l) m[l] = ma[l] + mb[l];
      out.add_term(std::move(m), ca * cb);
    }
  }
  return out;
}

}  // namespace fermat
