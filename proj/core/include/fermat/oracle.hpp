#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "fermat/polynomial.hpp"
#include "fermat/scalar.hpp"

namespace fermat {

template <Scalar S>
class DerivativeOracle;

template <Scalar S>
using Oracle = std::shared_ptr<const DerivativeOracle<S>>;

// A smooth function of one variable, known through its derivatives.
template <Scalar S>
class DerivativeOracle {
 public:
  virtual ~DerivativeOracle() = default;

  virtual std::string identifier() const = 0;
  virtual S derivative(unsigned n, const S& a) const = 0;
  // true: every derivative of positive order vanishes at a; nullopt: unknown.
  virtual std::optional<bool> flat_at(const S&) const { return std::nullopt; }
  virtual unsigned search_cap() const { return 64; }
  virtual const UniPoly<S>* polynomial() const { return nullptr; }
  virtual const std::vector<std::pair<S, Oracle<S>>>* linear_terms() const { return nullptr; }

  S operator()(const S& a) const { return derivative(0, a); }
};

// A smooth function of several variables, known through its partials.
template <Scalar S>
class PartialOracle {
 public:
  virtual ~PartialOracle() = default;

  virtual std::string identifier() const = 0;
  virtual std::size_t arity() const = 0;
  virtual S partial(std::span<const unsigned> index, std::span<const S> point) const = 0;
  virtual unsigned search_cap() const { return 64; }
  virtual const MultiPoly* polynomial() const { return nullptr; }
};

namespace detail {

template <Scalar S>
std::string poly_identifier(const UniPoly<S>& p) {
  std::string out = "poly:[";
  for (std::size_t i = 0; i < p.coefficients().size(); ++i) {
    if (i) out += ",";
    out += ScalarTraits<S>::str(p.coefficients()[i]);
  }
  if (p.is_zero()) out += "0";
  return out + "]";
}

template <Scalar S>
[[noreturn]] void not_representable(const std::string& what, const S& a) {
  fail(ErrorCode::not_representable,
       what + "(" + ScalarTraits<S>::str(a) + ") is not representable in the exact backend");
}

}  // namespace detail

template <Scalar S>
class PolynomialOracle final : public DerivativeOracle<S> {
 public:
  explicit PolynomialOracle(UniPoly<S> p, std::string name = {})
      : p_(std::move(p)), name_(std::move(name)) {}

  std::string identifier() const override { return name_.empty() ? detail::poly_identifier(p_) : name_; }
  S derivative(unsigned n, const S& a) const override { return p_.derivative_at(n, a); }
  std::optional<bool> flat_at(const S&) const override { return p_.degree() <= 0; }
  const UniPoly<S>* polynomial() const override { return &p_; }

 private:
  UniPoly<S> p_;
  std::string name_;
};

template <Scalar S>
Oracle<S> polynomial_oracle(UniPoly<S> p) {
  return std::make_shared<PolynomialOracle<S>>(std::move(p));
}

template <Scalar S>
Oracle<S> polynomial_oracle(const std::vector<Rational>& coefficients) {
  std::vector<S> c;
  for (const auto& q : coefficients) c.push_back(from_rational<S>(q));
  return polynomial_oracle<S>(UniPoly<S>(std::move(c)));
}

template <Scalar S>
Oracle<S> powint_oracle(unsigned n) {
  return std::make_shared<PolynomialOracle<S>>(UniPoly<S>::monomial(S(1), n),
                                               "powint:" + std::to_string(n));
}

enum class Elementary { sin, cos, exp, log };

template <Scalar S>
class ElementaryOracle final : public DerivativeOracle<S> {
 public:
  explicit ElementaryOracle(Elementary kind) : kind_(kind) {}

  std::string identifier() const override {
    switch (kind_) {
      case Elementary::sin: return "sin";
      case Elementary::cos: return "cos";
      case Elementary::exp: return "exp";
      case Elementary::log: return "log";
    }
    return "?";
  }

  S derivative(unsigned n, const S& a) const override {
    switch (kind_) {
      case Elementary::sin: return trig(n, a);
      case Elementary::cos: return trig(n + 1, a);
      case Elementary::exp: return exp(a);
      case Elementary::log: return log(n, a);
    }
    return S(0);
  }

  std::optional<bool> flat_at(const S&) const override { return false; }

 private:
  // n-th derivative of sin.
  static S trig(unsigned n, const S& a) {
    unsigned phase = n % 4;
    if constexpr (ScalarTraits<S>::exact) {
      if (a != 0) detail::not_representable(phase % 2 ? std::string("cos") : std::string("sin"), a);
      static const int at_zero[4] = {0, 1, 0, -1};
      return S(at_zero[phase]);
    } else {
      switch (phase) {
        case 0: return mp::sin(a);
        case 1: return mp::cos(a);
        case 2: return -mp::sin(a);
        default: return -mp::cos(a);
      }
    }
  }

  static S exp(const S& a) {
    if constexpr (ScalarTraits<S>::exact) {
      if (a != 0) detail::not_representable(std::string("exp"), a);
      return S(1);
    } else {
      return mp::exp(a);
    }
  }

  static S log(unsigned n, const S& a) {
    if (!(a > 0)) fail(ErrorCode::domain_error, "log is defined for positive arguments only");
    if (n == 0) {
      if constexpr (ScalarTraits<S>::exact) {
        if (a != 1) detail::not_representable(std::string("log"), a);
        return S(0);
      } else {
        return mp::log(a);
      }
    }
    S v = from_rational<S>(factorial(n - 1)) / ipow(a, n);
    return n % 2 == 0 ? S(-v) : v;
  }

  Elementary kind_;
};

template <Scalar S>
Oracle<S> elementary_oracle(Elementary kind) {
  return std::make_shared<ElementaryOracle<S>>(kind);
}

// e^{-1/x} for x > 0 and 0 otherwise; flat at every x <= 0.
template <Scalar S>
class FlatExpOracle final : public DerivativeOracle<S> {
 public:
  std::string identifier() const override { return "flat_exp"; }

  S derivative(unsigned n, const S& a) const override {
    if (a <= 0) return S(0);
    if constexpr (ScalarTraits<S>::exact) {
      detail::not_representable(std::string("flat_exp"), a);
    } else {
      // f^(n)(x) = e^{-1/x} P_n(1/x), P_{n+1}(u) = u^2 (P_n(u) - P_n'(u)).
      QPoly p = QPoly::constant(Rational(1));
      QPoly u2 = QPoly::monomial(Rational(1), 2);
      for (unsigned k = 0; k < n; ++k) p = u2 * (p - p.derivative());
      S u = S(1) / a;
      S acc(0);
      const auto& c = p.coefficients();
      for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * u + from_rational<S>(*it);
      return mp::exp(-u) * acc;
    }
  }

  std::optional<bool> flat_at(const S& a) const override { return a <= 0; }
};

template <Scalar S>
Oracle<S> flat_exp_oracle() {
  return std::make_shared<FlatExpOracle<S>>();
}

template <Scalar S>
class LambdaOracle final : public DerivativeOracle<S> {
 public:
  using Derivative = std::function<S(unsigned, const S&)>;
  using Flatness = std::function<std::optional<bool>(const S&)>;

  LambdaOracle(std::string name, Derivative d, Flatness flat = {}, unsigned cap = 64)
      : name_(std::move(name)), d_(std::move(d)), flat_(std::move(flat)), cap_(cap) {}

  std::string identifier() const override { return name_; }
  S derivative(unsigned n, const S& a) const override { return d_(n, a); }
  std::optional<bool> flat_at(const S& a) const override {
    return flat_ ? flat_(a) : std::nullopt;
  }
  unsigned search_cap() const override { return cap_; }

 private:
  std::string name_;
  Derivative d_;
  Flatness flat_;
  unsigned cap_;
};

template <Scalar S>
Oracle<S> lambda_oracle(std::string name, typename LambdaOracle<S>::Derivative d,
                        typename LambdaOracle<S>::Flatness flat = {}, unsigned cap = 64) {
  return std::make_shared<LambdaOracle<S>>(std::move(name), std::move(d), std::move(flat), cap);
}

// A function known only by name and by the facts declared about it
// elsewhere (integrals, bounds). Asking for a derivative is an error.
template <Scalar S>
class DeclaredOracle final : public DerivativeOracle<S> {
 public:
  explicit DeclaredOracle(std::string name) : name_(std::move(name)) {}

  std::string identifier() const override { return name_; }
  S derivative(unsigned, const S&) const override {
    fail(ErrorCode::oracle_unavailable, "'" + name_ + "' has no pointwise values");
  }

 private:
  std::string name_;
};

template <Scalar S>
Oracle<S> declared_oracle(std::string name) {
  return std::make_shared<DeclaredOracle<S>>(std::move(name));
}

// Σ λᵢ fᵢ.
template <Scalar S>
class LinearCombinationOracle final : public DerivativeOracle<S> {
 public:
  explicit LinearCombinationOracle(std::vector<std::pair<S, Oracle<S>>> terms)
      : terms_(std::move(terms)) {
    UniPoly<S> sum;
    for (const auto& [lambda, f] : terms_) {
      const UniPoly<S>* p = f->polynomial();
      if (!p) return;
      sum = sum + p->scale(lambda);
    }
    poly_ = std::move(sum);
  }

  std::string identifier() const override {
    if (poly_) return detail::poly_identifier(*poly_);
    std::string out = "lin[";
    for (std::size_t i = 0; i < terms_.size(); ++i) {
      if (i) out += " + ";
      out += ScalarTraits<S>::str(terms_[i].first) + "*" + terms_[i].second->identifier();
    }
    return out + "]";
  }

  S derivative(unsigned n, const S& a) const override {
    if (poly_) return poly_->derivative_at(n, a);
    S acc(0);
    for (const auto& [lambda, f] : terms_) acc += lambda * f->derivative(n, a);
    return acc;
  }

  std::optional<bool> flat_at(const S& a) const override {
    if (poly_) return poly_->degree() <= 0;
    for (const auto& [lambda, f] : terms_) {
      if (f->flat_at(a) != true) return std::nullopt;
    }
    return true;
  }

  unsigned search_cap() const override {
    unsigned cap = 0;
    for (const auto& [lambda, f] : terms_) cap = std::max(cap, f->search_cap());
    return cap == 0 ? 64 : cap;
  }

  const UniPoly<S>* polynomial() const override { return poly_ ? &*poly_ : nullptr; }
  const std::vector<std::pair<S, Oracle<S>>>* linear_terms() const override { return &terms_; }

 private:
  std::vector<std::pair<S, Oracle<S>>> terms_;
  std::optional<UniPoly<S>> poly_;
};

template <Scalar S>
Oracle<S> linear_combination(std::vector<std::pair<S, Oracle<S>>> terms) {
  return std::make_shared<LinearCombinationOracle<S>>(std::move(terms));
}

// u ↦ outer · g(inner · u).
template <Scalar S>
class RescaledOracle final : public DerivativeOracle<S> {
 public:
  RescaledOracle(Oracle<S> base, S outer, S inner)
      : base_(std::move(base)), outer_(std::move(outer)), inner_(std::move(inner)) {}

  std::string identifier() const override {
    return ScalarTraits<S>::str(outer_) + "*" + base_->identifier() + "(" +
           ScalarTraits<S>::str(inner_) + "*u)";
  }
  S derivative(unsigned n, const S& a) const override {
    return outer_ * ipow(inner_, n) * base_->derivative(n, inner_ * a);
  }
  std::optional<bool> flat_at(const S& a) const override {
    if (outer_ == 0 || inner_ == 0) return true;
    return base_->flat_at(inner_ * a);
  }
  unsigned search_cap() const override { return base_->search_cap(); }

 private:
  Oracle<S> base_;
  S outer_;
  S inner_;
};

template <Scalar S>
Oracle<S> rescaled(Oracle<S> base, S outer, S inner) {
  return std::make_shared<RescaledOracle<S>>(std::move(base), std::move(outer), std::move(inner));
}

template <Scalar S>
class MultiPolyOracle final : public PartialOracle<S> {
 public:
  explicit MultiPolyOracle(MultiPoly p, std::string name = "multipoly")
      : p_(std::move(p)), name_(std::move(name)) {}

  std::string identifier() const override { return name_; }
  std::size_t arity() const override { return p_.arity(); }
  S partial(std::span<const unsigned> index, std::span<const S> point) const override {
    return p_.partial<S>(index, point);
  }
  const MultiPoly* polynomial() const override { return &p_; }

 private:
  MultiPoly p_;
  std::string name_;
};

template <Scalar S>
class LambdaPartialOracle final : public PartialOracle<S> {
 public:
  using Partial = std::function<S(std::span<const unsigned>, std::span<const S>)>;

  LambdaPartialOracle(std::string name, std::size_t arity, Partial f)
      : name_(std::move(name)), arity_(arity), f_(std::move(f)) {}

  std::string identifier() const override { return name_; }
  std::size_t arity() const override { return arity_; }
  S partial(std::span<const unsigned> index, std::span<const S> point) const override {
    return f_(index, point);
  }

 private:
  std::string name_;
  std::size_t arity_;
  Partial f_;
};

// x ↦ D^{(i, 0)} h(p, x): the last variable free, the others fixed at p.
template <Scalar S>
class PartialSliceOracle final : public DerivativeOracle<S> {
 public:
  PartialSliceOracle(std::shared_ptr<const PartialOracle<S>> h, std::vector<unsigned> index,
                     std::vector<S> point)
      : h_(std::move(h)), index_(std::move(index)), point_(std::move(point)) {
    if (index_.size() + 1 != h_->arity() || point_.size() + 1 != h_->arity()) {
      fail(ErrorCode::invalid_argument, "slice does not match the oracle arity");
    }
    if (const MultiPoly* p = h_->polynomial()) {
      std::vector<unsigned> full = index_;
      full.push_back(0);
      poly_ = p->derivative(full).template slice_last<S>(point_);
    }
  }

  std::string identifier() const override {
    if (poly_) return detail::poly_identifier(*poly_);
    std::string out = "D(";
    for (std::size_t i = 0; i < index_.size(); ++i) out += std::to_string(index_[i]) + ",";
    return out + "0)" + h_->identifier();
  }

  S derivative(unsigned n, const S& a) const override {
    if (poly_) return poly_->derivative_at(n, a);
    std::vector<unsigned> full = index_;
    full.push_back(n);
    std::vector<S> at = point_;
    at.push_back(a);
    return h_->partial(full, at);
  }

  std::optional<bool> flat_at(const S&) const override {
    if (poly_) return poly_->degree() <= 0;
    return std::nullopt;
  }
  unsigned search_cap() const override { return h_->search_cap(); }
  const UniPoly<S>* polynomial() const override { return poly_ ? &*poly_ : nullptr; }

 private:
  std::shared_ptr<const PartialOracle<S>> h_;
  std::vector<unsigned> index_;
  std::vector<S> point_;
  std::optional<UniPoly<S>> poly_;
};

}  // namespace fermat
