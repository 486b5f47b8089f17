#pragma once

#include <functional>
#include <map>
#include <memory>
#include <span>
#include <tuple>
#include <vector>

#include "fermat/fermat_real.hpp"
#include "fermat/oracle.hpp"

namespace fermat {

// Highest Taylor order evaluated for non-polynomial oracles.
inline constexpr std::uint64_t taylor_order_cap = 4096;

namespace detail {

inline std::uint64_t taylor_order(std::uint64_t nilpotency, std::optional<int> degree) {
  std::uint64_t k = nilpotency - 1;
  if (degree) return std::min<std::uint64_t>(k, *degree < 0 ? 0 : static_cast<std::uint64_t>(*degree));
  if (k > taylor_order_cap) {
    fail(ErrorCode::taylor_order_cap,
         "Taylor order " + std::to_string(k) + " exceeds " + std::to_string(taylor_order_cap));
  }
  return k;
}

}  // namespace detail

// •f(x) = Σ_{i≤K} f⁽ⁱ⁾(°x)/i! (δx)ⁱ, K = nilpotency_index(x) - 1.
template <Scalar S>
FermatReal<S> fermat_extend(const DerivativeOracle<S>& f, const FermatReal<S>& x) {
  const S& a = x.standard_part();
  FermatReal<S> result(f.derivative(0, a));
  if (x.is_real()) return result;
  const UniPoly<S>* p = f.polynomial();
  if (!p && f.flat_at(a) == true) return result;
  std::uint64_t k = detail::taylor_order(nilpotency_index(x),
                                         p ? std::optional<int>(p->degree()) : std::nullopt);
  FermatReal<S> dx = x.infinitesimal_part();
  FermatReal<S> power(S(1));
  S fact(1);
  for (std::uint64_t i = 1; i <= k; ++i) {
    power *= dx;
    if (power.is_zero()) break;
    fact *= S(static_cast<unsigned long>(i));
    S d = f.derivative(static_cast<unsigned>(i), a);
    if (d != 0) result += power.scale(d / fact);
  }
  return result;
}

template <Scalar S>
FermatReal<S> fermat_extend(const Oracle<S>& f, const FermatReal<S>& x) {
  return fermat_extend(*f, x);
}

// Multivariate Taylor sum over multi-indices with (δx)^i ≠ 0.
template <Scalar S>
FermatReal<S> fermat_extend_multi(const PartialOracle<S>& h, std::span<const FermatReal<S>> x) {
  std::size_t m = h.arity();
  if (x.size() != m) fail(ErrorCode::invalid_argument, "point arity does not match the oracle");
  const MultiPoly* poly = h.polynomial();
  std::vector<S> base;
  std::vector<std::vector<FermatReal<S>>> powers(m);  // (δx_l)^k / k!
  for (std::size_t l = 0; l < m; ++l) {
    base.push_back(x[l].standard_part());
    std::optional<int> deg;
    if (poly) deg = static_cast<int>(poly->degree_in(l));
    std::uint64_t k = detail::taylor_order(nilpotency_index(x[l]), deg);
    FermatReal<S> dx = x[l].infinitesimal_part();
    powers[l].push_back(FermatReal<S>(S(1)));
    for (std::uint64_t i = 1; i <= k; ++i) {
      FermatReal<S> next = (powers[l].back() * dx).scale(S(1) / S(static_cast<unsigned long>(i)));
      if (next.is_zero()) break;
      powers[l].push_back(std::move(next));
    }
  }
  FermatReal<S> result;
  std::vector<unsigned> index(m, 0);
  std::function<void(std::size_t, const FermatReal<S>&)> walk = [&](std::size_t l,
                                                                    const FermatReal<S>& prod) {
    if (l == m) {
      S d = h.partial(index, base);
      if (d != 0) result += prod.scale(d);
      return;
    }
    for (std::size_t k = 0; k < powers[l].size(); ++k) {
      FermatReal<S> next = k == 0 ? prod : prod * powers[l][k];
      if (next.is_zero()) break;
      index[l] = static_cast<unsigned>(k);
      walk(l + 1, next);
    }
    index[l] = 0;
  };
  walk(0, FermatReal<S>(S(1)));
  return result;
}

// Σ •αᵢ(x) t^{aᵢ}, exponents in [0, 1] strictly increasing.
template <Scalar S>
class QSFunction {
 public:
  struct Component {
    Rational exponent;
    Oracle<S> coefficient;
  };

  QSFunction() = default;
  explicit QSFunction(std::vector<Component> components) : components_(std::move(components)) {
    for (std::size_t i = 0; i < components_.size(); ++i) {
      const auto& c = components_[i];
      if (c.exponent < 0 || c.exponent > 1) {
        fail(ErrorCode::invalid_argument, "QS exponent " + to_string(c.exponent) + " outside [0, 1]");
      }
      if (i > 0 && !(components_[i - 1].exponent < c.exponent)) {
        fail(ErrorCode::invalid_argument, "QS exponents must be strictly increasing");
      }
      if (!c.coefficient) fail(ErrorCode::invalid_argument, "QS coefficient is missing");
    }
  }

  const std::vector<Component>& components() const noexcept { return components_; }
  bool empty() const noexcept { return components_.empty(); }

 private:
  std::vector<Component> components_;
};

template <Scalar S>
FermatReal<S> eval_qs(const QSFunction<S>& f, const FermatReal<S>& x) {
  FermatReal<S> result;
  for (const auto& c : f.components()) {
    FermatReal<S> value = fermat_extend(*c.coefficient, x);
    if (c.exponent != 0) value *= FermatReal<S>::monomial(S(1), c.exponent);
    result += value;
  }
  return result;
}

// Taylor expansion of h(v, ·) in the parameters v around °v, grouped by
// the exponents of (δv)^i / i!.
template <Scalar S>
QSFunction<S> expand_parametric(std::shared_ptr<const PartialOracle<S>> h,
                                std::span<const FermatReal<S>> v) {
  std::size_t k = v.size();
  if (h->arity() != k + 1) fail(ErrorCode::invalid_argument, "parameter count does not match the oracle");
  const MultiPoly* poly = h->polynomial();
  std::vector<S> base;
  std::vector<std::vector<FermatReal<S>>> powers(k);
  for (std::size_t l = 0; l < k; ++l) {
    base.push_back(v[l].standard_part());
    std::optional<int> deg;
    if (poly) deg = static_cast<int>(poly->degree_in(l));
    std::uint64_t order = detail::taylor_order(nilpotency_index(v[l]), deg);
    FermatReal<S> dv = v[l].infinitesimal_part();
    powers[l].push_back(FermatReal<S>(S(1)));
    for (std::uint64_t i = 1; i <= order; ++i) {
      FermatReal<S> next = (powers[l].back() * dv).scale(S(1) / S(static_cast<unsigned long>(i)));
      if (next.is_zero()) break;
      powers[l].push_back(std::move(next));
    }
  }

  std::map<Rational, std::vector<std::pair<S, Oracle<S>>>> groups;
  std::vector<unsigned> index(k, 0);
  std::function<void(std::size_t, const FermatReal<S>&)> walk = [&](std::size_t l,
                                                                    const FermatReal<S>& prod) {
    if (l == k) {
      auto slice = std::make_shared<PartialSliceOracle<S>>(h, index, base);
      if (const UniPoly<S>* p = slice->polynomial(); p && p->is_zero()) return;
      if (prod.standard_part() != 0) groups[Rational(0)].emplace_back(prod.standard_part(), slice);
      for (const auto& term : prod.terms()) {
        groups[term.exponent.value()].emplace_back(term.coefficient, slice);
      }
      return;
    }
    for (std::size_t i = 0; i < powers[l].size(); ++i) {
      FermatReal<S> next = i == 0 ? prod : prod * powers[l][i];
      if (next.is_zero()) break;
      index[l] = static_cast<unsigned>(i);
      walk(l + 1, next);
    }
    index[l] = 0;
  };
  walk(0, FermatReal<S>(S(1)));

  std::vector<typename QSFunction<S>::Component> components;
  for (auto& [e, terms] : groups) {
    auto combined = terms.size() == 1 && terms.front().first == 1
                        ? terms.front().second
                        : linear_combination<S>(std::move(terms));
    if (const UniPoly<S>* p = combined->polynomial(); p && p->is_zero()) continue;
    components.push_back({e, std::move(combined)});
  }
  return QSFunction<S>(std::move(components));
}

// ∫_{u0}^{u1} f: exact for polynomials, by linearity for combinations,
// otherwise from declared values.
template <Scalar S>
class IntegralOracle {
 public:
  void declare(std::string identifier, const S& u0, const S& u1, const S& value) {
    declared_[{std::move(identifier), u0, u1}] = value;
  }

  S integral(const DerivativeOracle<S>& f, const S& u0, const S& u1) const {
    if (const UniPoly<S>* p = f.polynomial()) {
      S acc(0);
      const auto& c = p->coefficients();
      for (std::size_t k = 0; k < c.size(); ++k) {
        S n(static_cast<unsigned long>(k + 1));
        acc += c[k] * (ipow(u1, static_cast<unsigned>(k + 1)) - ipow(u0, static_cast<unsigned>(k + 1))) / n;
      }
      return acc;
    }
    if (auto it = declared_.find({f.identifier(), u0, u1}); it != declared_.end()) return it->second;
    if (const auto* terms = f.linear_terms()) {
      S acc(0);
      for (const auto& [lambda, g] : *terms) acc += lambda * integral(*g, u0, u1);
      return acc;
    }
    fail(ErrorCode::missing_integral, "no integral known for '" + f.identifier() + "' on [" +
                                          ScalarTraits<S>::str(u0) + ", " + ScalarTraits<S>::str(u1) + "]");
  }

 private:
  struct Key {
    std::string identifier;
    S u0;
    S u1;
    friend bool operator<(const Key& a, const Key& b) {
      if (a.identifier != b.identifier) return a.identifier < b.identifier;
      if (a.u0 != b.u0) return a.u0 < b.u0;
      return a.u1 < b.u1;
    }
  };
  std::map<Key, S> declared_;
};

template <Scalar S>
FermatReal<S> integrate_qs(const QSFunction<S>& f, const S& u0, const S& u1, const IntegralOracle<S>& oracle) {
  if (!(u0 < u1)) fail(ErrorCode::invalid_argument, "integration bounds must satisfy u0 < u1");
  FermatReal<S> result;
  for (const auto& c : f.components()) {
    result += FermatReal<S>::monomial(oracle.integral(*c.coefficient, u0, u1), c.exponent);
  }
  return result;
}

// Exponents a with Σ jₗaₗ = 1 such that no other s with Σ sₗaₗ <= 1 hits 1.
std::vector<Rational> separating_exponents(std::span<const unsigned> j);

// f⁽ʲ⁾(x0) as j! times the coefficient of t in •f(x0 + t^{1/j}).
template <Scalar S>
S extract_derivative(const DerivativeOracle<S>& f, const S& x0, unsigned j) {
  if (j == 0) fail(ErrorCode::invalid_argument, "derivative order must be positive");
  FermatReal<S> x = FermatReal<S>(x0) + FermatReal<S>::monomial(S(1), Rational(1, j));
  return fermat_extend(f, x).coefficient(Rational(1)) * from_rational<S>(factorial(j));
}

template <Scalar S>
S extract_derivative(const PartialOracle<S>& h, std::span<const S> x0, std::span<const unsigned> j) {
  if (x0.size() != h.arity() || j.size() != h.arity()) {
    fail(ErrorCode::invalid_argument, "multi-index arity does not match the oracle");
  }
  std::vector<Rational> a = separating_exponents(j);
  std::vector<FermatReal<S>> x;
  Rational jfact(1);
  for (std::size_t l = 0; l < j.size(); ++l) {
    x.push_back(FermatReal<S>(x0[l]) + FermatReal<S>::monomial(S(1), a[l]));
    jfact *= factorial(j[l]);
  }
  return fermat_extend_multi<S>(h, x).coefficient(Rational(1)) * from_rational<S>(jfact);
}

}  // namespace fermat
