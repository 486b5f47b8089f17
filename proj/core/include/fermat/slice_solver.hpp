#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fermat/roots.hpp"
#include "fermat/smooth_ext.hpp"

namespace fermat {

struct SliceClass {
  enum class Kind { flat, odd, even };

  Kind kind = Kind::flat;
  unsigned order = 0;  // least m with f⁽ᵐ⁾(a) ≠ 0
  int sign = 0;        // sgn f⁽ᵐ⁾(a)

  static SliceClass flat() { return {}; }
  static SliceClass of(unsigned m, int s) { return {m % 2 ? Kind::odd : Kind::even, m, s}; }

  bool is_flat() const noexcept { return kind == Kind::flat; }
  friend bool operator==(const SliceClass&, const SliceClass&) = default;
};

inline std::string describe(const SliceClass& c) {
  if (c.is_flat()) return "Flat";
  return std::string(c.kind == SliceClass::Kind::odd ? "Odd(" : "Even(") + std::to_string(c.order) +
         (c.sign > 0 ? ", +)" : ", -)");
}

enum class RootChoice { positive, negative };

struct SolveOptions {
  RootChoice root = RootChoice::positive;
  std::size_t step_cap = 10000;
};

template <Scalar S>
struct SolverStep {
  Rational exponent;
  S coefficient;
};

template <Scalar S>
struct SliceSolution {
  FermatReal<S> solution;
  SliceClass classification;
  std::vector<SolverStep<S>> steps;
};

template <Scalar S>
struct SolutionFamily {
  FermatReal<S> fundamental;
  Rational threshold;  // solutions are fundamental + z, every exponent of z above this
};

enum class Monotonicity { strictly_increasing, increasing, strictly_decreasing, decreasing, unknown };

inline std::string_view describe(Monotonicity m) {
  switch (m) {
    case Monotonicity::strictly_increasing: return "StrictlyIncreasing";
    case Monotonicity::increasing: return "Increasing";
    case Monotonicity::strictly_decreasing: return "StrictlyDecreasing";
    case Monotonicity::decreasing: return "Decreasing";
    case Monotonicity::unknown: return "Unknown";
  }
  return "?";
}

template <Scalar S>
struct Extrema {
  FermatReal<S> min;
  FermatReal<S> argmin;
  FermatReal<S> max;
  FermatReal<S> argmax;
};

namespace detail {

// Drops coefficients below the float backend's tolerance; identity when exact.
template <Scalar S>
FermatReal<S> drop_negligible(const FermatReal<S>& x, const S& scale) {
  if constexpr (ScalarTraits<S>::exact) {
    return x;
  } else {
    std::vector<typename FermatReal<S>::RawTerm> raw;
    for (const auto& term : x.terms()) {
      if (!ScalarTraits<S>::negligible(term.coefficient, scale)) {
        raw.push_back({term.exponent.value(), term.coefficient});
      }
    }
    S standard = ScalarTraits<S>::negligible(x.standard_part(), scale) ? S(0) : x.standard_part();
    return FermatReal<S>::normalize(standard, std::move(raw));
  }
}

template <Scalar S>
S magnitude(const FermatReal<S>& x) {
  S m = abs_value(x.standard_part());
  for (const auto& term : x.terms()) m = std::max(m, abs_value(term.coefficient));
  return std::max(m, S(1));
}

template <Scalar S>
bool same_real(const S& a, const S& b) {
  if constexpr (ScalarTraits<S>::exact) {
    return a == b;
  } else {
    return ScalarTraits<S>::negligible(S(a - b), std::max(abs_value(a), abs_value(b)));
  }
}

}  // namespace detail

template <Scalar S>
SliceClass classify_slice(const DerivativeOracle<S>& f, const S& a) {
  if (f.flat_at(a) == true) return SliceClass::flat();
  unsigned cap = f.search_cap();
  const UniPoly<S>* p = f.polynomial();
  if (p) cap = static_cast<unsigned>(std::max(p->degree(), 0));
  for (unsigned n = 1; n <= cap; ++n) {
    S d = f.derivative(n, a);
    if (!ScalarTraits<S>::negligible(d)) return SliceClass::of(n, sign(d));
  }
  if (p) return SliceClass::flat();
  fail(ErrorCode::unresolved_classification,
       "no nonzero derivative of '" + f.identifier() + "' up to order " + std::to_string(cap) + " at " +
           ScalarTraits<S>::str(a));
}

template <Scalar S>
bool slice_image_contains(const DerivativeOracle<S>& f, const S& a, const FermatReal<S>& w) {
  SliceClass cls = classify_slice(f, a);
  S fa = f.derivative(0, a);
  if (!detail::same_real(w.standard_part(), fa)) return false;
  FermatReal<S> d = detail::drop_negligible(w - FermatReal<S>(fa), detail::magnitude(w));
  if (d.is_zero()) return true;
  switch (cls.kind) {
    case SliceClass::Kind::flat: return false;
    case SliceClass::Kind::odd: return true;
    case SliceClass::Kind::even: return sign(d.leading_term().coefficient) == cls.sign;
  }
  return false;
}

namespace detail {

// Value of the map along the solver's partial solutions, each step adding
// one monomial. Recomputes the map from scratch at every step.
template <Scalar S, class Eval>
class RecomputeTracker {
 public:
  RecomputeTracker(Eval eval, const S& a) : eval_(std::move(eval)), x_(a), value_(eval_(x_)) {}

  const FermatReal<S>& value() const { return value_; }

  void advance(const S& c, const Rational& b) {
    x_ += FermatReal<S>::monomial(c, b);
    value_ = eval_(x_);
  }

 private:
  Eval eval_;
  FermatReal<S> x_;
  FermatReal<S> value_;
};

// Keeps D_i = •f⁽ⁱ⁾(x) for i ≤ K and shifts them by Taylor's formula when
// x gains the monomial c·t^b, so every step costs O(K²) monomial products.
// K is fixed by the first (smallest) exponent.
template <Scalar S>
class TaylorTracker {
 public:
  TaylorTracker(const DerivativeOracle<S>& f, const S& a) : f_(f), a_(a), d_{FermatReal<S>(f.derivative(0, a))} {}

  const FermatReal<S>& value() const { return d_.front(); }

  void advance(const S& c, const Rational& b) {
    if (d_.size() == 1) {
      const UniPoly<S>* p = f_.polynomial();
      std::uint64_t order = taylor_order(nilpotency_index(FermatReal<S>::monomial(S(1), b)),
                                         p ? std::optional<int>(p->degree()) : std::nullopt);
      for (std::uint64_t i = 1; i <= order; ++i) d_.emplace_back(f_.derivative(static_cast<unsigned>(i), a_));
    }
    std::size_t k = d_.size();
    std::vector<FermatReal<S>> step;
    S coef(1);
    for (std::size_t j = 0; j < k; ++j) {
      if (j > 0) coef = coef * c / S(static_cast<unsigned long>(j));
      Rational e = static_cast<long>(j) * b;
      if (e > 1) break;
      step.push_back(FermatReal<S>::monomial(coef, e));
    }
    std::vector<FermatReal<S>> next(k);
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = 0; j < step.size() && i + j < k; ++j) next[i] += d_[i + j] * step[j];
    }
    d_ = std::move(next);
  }

 private:
  const DerivativeOracle<S>& f_;
  S a_;
  std::vector<FermatReal<S>> d_;
};

// Leading-term recursion around the real point a, where the first
// nonvanishing derivative of the slice map has order m and value dm.
// tracker holds the map's value at the current partial solution.
template <Scalar S, class Tracker>
SliceSolution<S> leading_term_solve(Tracker& tracker, const S& a, SliceClass cls, const S& dm,
                                    const FermatReal<S>& w, const SolveOptions& options) {
  SliceSolution<S> out{FermatReal<S>(a), cls, {}};
  S scale = magnitude(w);
  FermatReal<S> residual = drop_negligible(w - tracker.value(), scale);
  if (residual.is_zero()) return out;
  if (residual.standard_part() != 0 || cls.is_flat()) {
    fail(ErrorCode::not_in_slice_image,
         "target is outside the image of the slice at " + ScalarTraits<S>::str(a));
  }

  unsigned m = cls.order;
  S m_fact = from_rational<S>(factorial(m));
  S m1_fact = from_rational<S>(factorial(m - 1));

  const auto& lead = residual.leading_term();
  Rational b1 = lead.exponent.value() / m;
  S radicand = m_fact * lead.coefficient / dm;
  if (m % 2 == 0 && radicand < 0) {
    fail(ErrorCode::not_in_slice_image, "even slice cannot reach the sign of this target");
  }
  std::optional<S> c1 = ScalarTraits<S>::root(radicand, m);
  if (!c1) {
    fail(ErrorCode::root_not_exact, "leading coefficient " + ScalarTraits<S>::str(radicand) +
                                        " has no rational " + std::to_string(m) + "-th root");
  }
  if (m % 2 == 0 && options.root == RootChoice::negative) *c1 = -*c1;
  S c1_pow = ipow(*c1, m - 1);
  out.solution += FermatReal<S>::monomial(*c1, b1);
  out.steps.push_back({b1, *c1});
  tracker.advance(*c1, b1);

  Rational previous = b1;
  for (;;) {
    residual = drop_negligible(w - tracker.value(), scale);
    if (residual.is_zero()) return out;
    if (out.steps.size() >= options.step_cap) {
      fail(ErrorCode::step_cap_exceeded, "solver exceeded " + std::to_string(options.step_cap) + " steps");
    }
    if (residual.standard_part() != 0) {
      fail(ErrorCode::leading_term_mismatch, "residual acquired a standard part");
    }
    const auto& g = residual.leading_term();
    Rational b = g.exponent.value() - (m - 1) * b1;
    if (!(b > previous)) {
      fail(ErrorCode::leading_term_mismatch,
           "step exponent " + to_string(b) + " does not exceed " + to_string(previous));
    }
    S c = m1_fact * g.coefficient / (dm * c1_pow);
    out.solution += FermatReal<S>::monomial(c, b);
    out.steps.push_back({b, c});
    tracker.advance(c, b);
    previous = b;
  }
}

}  // namespace detail

// Recursive leading-term algorithm for •f(x) = w on the slice a + D_∞.
template <Scalar S>
SliceSolution<S> solve_slice_traced(const DerivativeOracle<S>& f, const S& a, const FermatReal<S>& w,
                                    const SolveOptions& options = {}) {
  SliceClass cls = classify_slice(f, a);
  if (!slice_image_contains(f, a, w)) {
    fail(ErrorCode::not_in_slice_image,
         "target is outside the image of the slice at " + ScalarTraits<S>::str(a));
  }
  S dm = cls.is_flat() ? S(0) : f.derivative(cls.order, a);
  detail::TaylorTracker<S> tracker(f, a);
  return detail::leading_term_solve<S>(tracker, a, cls, dm, w, options);
}

template <Scalar S>
FermatReal<S> solve_slice(const DerivativeOracle<S>& f, const S& a, const FermatReal<S>& w,
                          const SolveOptions& options = {}) {
  return solve_slice_traced(f, a, w, options).solution;
}

// Keeps the terms of y with (m-1)a₁ + aᵢ <= 1.
template <Scalar S>
FermatReal<S> refine_to_fundamental(const DerivativeOracle<S>& f, const FermatReal<S>& y) {
  SliceClass cls = classify_slice(f, y.standard_part());
  if (cls.is_flat()) fail(ErrorCode::invalid_argument, "refinement needs a non-flat slice");
  if (y.is_real()) return y;
  const Rational& a1 = y.leading_term().exponent.value();
  Rational shift = (cls.order - 1) * a1;
  std::vector<typename FermatReal<S>::RawTerm> kept;
  for (const auto& term : y.terms()) {
    if (shift + term.exponent.value() <= 1) kept.push_back({term.exponent.value(), term.coefficient});
  }
  return FermatReal<S>::normalize(y.standard_part(), std::move(kept));
}

template <Scalar S>
Rational family_threshold(unsigned m, const FermatReal<S>& fundamental) {
  if (fundamental.is_real()) return Rational(1, m);
  const Rational& a1 = fundamental.leading_term().exponent.value();
  if (m * a1 <= 1) return 1 - (m - 1) * a1;
  return Rational(1, m);
}

template <Scalar S>
SolutionFamily<S> solution_family(const DerivativeOracle<S>& f, const S& a, const FermatReal<S>& w,
                                  const SolveOptions& options = {}) {
  SliceSolution<S> sol = solve_slice_traced(f, a, w, options);
  if (sol.classification.is_flat()) {
    fail(ErrorCode::invalid_argument, "on a flat slice every point solves the equation");
  }
  Rational threshold = family_threshold(sol.classification.order, sol.solution);
  return {std::move(sol.solution), std::move(threshold)};
}

template <Scalar S>
Monotonicity classify_monotone_global(const DerivativeOracle<S>& f, std::span<const S> grid) {
  if (grid.empty()) return Monotonicity::unknown;
  bool all_first_order = true;
  int direction = 0;
  for (const auto& x : grid) {
    SliceClass cls = classify_slice(f, x);
    if (cls.kind != SliceClass::Kind::odd) return Monotonicity::unknown;
    if (direction == 0) direction = cls.sign;
    if (cls.sign != direction) return Monotonicity::unknown;
    all_first_order = all_first_order && cls.order == 1;
  }
  if (direction > 0) return all_first_order ? Monotonicity::strictly_increasing : Monotonicity::increasing;
  return all_first_order ? Monotonicity::strictly_decreasing : Monotonicity::decreasing;
}

namespace detail {

template <Scalar S>
QPoly rational_poly(const UniPoly<S>& p) {
  return p.template map<Rational>([](const S& c) { return ScalarTraits<S>::to_rational(c); });
}

// Real points of [lo, hi] where p vanishes, as Scalars. Irrational roots
// are approximated under the float backend and skipped (flagged) when exact.
template <Scalar S>
std::vector<S> real_zeros(const QPoly& p, const Rational& lo, const Rational& hi, bool& skipped) {
  std::vector<S> out;
  if (p.is_zero()) return out;
  if (p(lo) == 0) out.push_back(from_rational<S>(lo));
  Rational width = default_isolation_width();
  if constexpr (!ScalarTraits<S>::exact) {
    width = Rational(BigInt(1), mp::pow(BigInt(10), BigFloat::default_precision()));
  }
  QPoly q = squarefree_part(p);
  for (auto root : isolate_real_roots(p, RealInterval::open(lo, hi))) {
    if (root.exact()) {
      out.push_back(from_rational<S>(root.value()));
      continue;
    }
    if constexpr (ScalarTraits<S>::exact) {
      skipped = true;
    } else {
      refine_root(q, root, width);
      out.push_back(from_rational<S>((root.lo + root.hi) / 2));
    }
  }
  if (hi != lo && p(hi) == 0) out.push_back(from_rational<S>(hi));
  return out;
}

}  // namespace detail

// c with a < c < b and •f(c) = y, following the intermediate value argument.
template <Scalar S>
FermatReal<S> ivp_solve(const DerivativeOracle<S>& f, const FermatReal<S>& a, const FermatReal<S>& b,
                        const FermatReal<S>& y, std::span<const S> candidates = {}) {
  if (!(a < b)) fail(ErrorCode::invalid_argument, "ivp_solve needs a < b");
  FermatReal<S> fa = fermat_extend(f, a);
  FermatReal<S> fb = fermat_extend(f, b);
  if (y == fa) return a;
  if (y == fb) return b;
  const FermatReal<S>& lo = fa < fb ? fa : fb;
  const FermatReal<S>& hi = fa < fb ? fb : fa;
  if (!(lo < y && y < hi)) fail(ErrorCode::no_real_preimage, "target is not between f(a) and f(b)");

  bool skipped = false;
  std::vector<S> points(candidates.begin(), candidates.end());
  if (points.empty()) {
    const UniPoly<S>* p = f.polynomial();
    if (!p) fail(ErrorCode::invalid_argument, "non-polynomial functions need candidate preimages");
    QPoly g = detail::rational_poly(*p) - QPoly::constant(ScalarTraits<S>::to_rational(y.standard_part()));
    if (g.is_zero()) return a;
    points = detail::real_zeros<S>(g, ScalarTraits<S>::to_rational(a.standard_part()),
                                   ScalarTraits<S>::to_rational(b.standard_part()), skipped);
  }

  auto inside = [&](const FermatReal<S>& x) { return a < x && x < b; };
  auto attains = [&](const FermatReal<S>& x) {
    return detail::drop_negligible(fermat_extend(f, x) - y, detail::magnitude(y)).is_zero();
  };
  for (const S& c : points) {
    if (!slice_image_contains(f, c, y)) continue;
    for (RootChoice choice : {RootChoice::positive, RootChoice::negative}) {
      FermatReal<S> x;
      try {
        x = solve_slice(f, c, y, SolveOptions{choice});
      } catch (const Error& e) {
        if (e.code() != ErrorCode::root_not_exact) throw;
        skipped = true;
        continue;
      }
      if (inside(x)) return x;
      for (const FermatReal<S>& shifted : {a + FermatReal<S>::t(), b - FermatReal<S>::t()}) {
        if (shifted.standard_part() == c && inside(shifted) && attains(shifted)) return shifted;
      }
    }
  }
  if (skipped) fail(ErrorCode::root_not_exact, "every admissible preimage is irrational");
  fail(ErrorCode::no_real_preimage, "no admissible real preimage in [°a, °b]");
}

// Fermat-order extrema of •f on [a, b] for polynomial f.
template <Scalar S>
Extrema<S> extrema_on_interval(const DerivativeOracle<S>& f, const FermatReal<S>& a, const FermatReal<S>& b) {
  if (!(a < b)) fail(ErrorCode::invalid_argument, "extrema_on_interval needs a < b");
  const UniPoly<S>* p = f.polynomial();
  if (!p) fail(ErrorCode::invalid_argument, "extrema_on_interval needs a polynomial");

  struct Candidate {
    FermatReal<S> value;
    FermatReal<S> arg;
    std::optional<IsolatedRoot> irrational;  // arg is approximate when set
  };
  FermatReal<S> fa = fermat_extend(f, a);
  FermatReal<S> fb = fermat_extend(f, b);
  Candidate best_min = fb < fa ? Candidate{fb, b, {}} : Candidate{fa, a, {}};
  Candidate best_max = fb > fa ? Candidate{fb, b, {}} : Candidate{fa, a, {}};

  QPoly fq = detail::rational_poly(*p);
  QPoly d1 = fq.derivative();
  if (d1.is_zero()) return {fa, a, fa, a};
  QPoly q = squarefree_part(d1);
  Rational lo = ScalarTraits<S>::to_rational(a.standard_part());
  Rational hi = ScalarTraits<S>::to_rational(b.standard_part());

  // Sign of f(c) - candidate at the critical point c.
  auto beats = [&](IsolatedRoot& c, const Candidate& cand, int direction) {
    int s = sign_at_root(fq - QPoly::constant(ScalarTraits<S>::to_rational(cand.value.standard_part())), q, c);
    if (s == 0) {
      // f(c) real, candidate = f(c) + δ.
      if (cand.value.is_real()) return false;
      s = -sign(cand.value.leading_term().coefficient);
    }
    return s == direction;
  };

  std::vector<IsolatedRoot> roots;
  if (d1(lo) == 0) roots.push_back({lo, lo});
  for (auto& r : isolate_real_roots(d1, RealInterval::open(lo, hi))) roots.push_back(r);
  if (hi != lo && d1(hi) == 0) roots.push_back({hi, hi});

  // Exact critical points first, so irrational ones are only ever
  // compared against representable candidates.
  std::vector<std::pair<IsolatedRoot, int>> irrational;
  for (auto& c : roots) {
    if (c.exact()) {
      FermatReal<S> cx(from_rational<S>(c.value()));
      if (cx < a || cx > b) continue;
    }
    int order_sign = 0;
    unsigned order = 0;
    for (unsigned k = 2; k <= static_cast<unsigned>(fq.degree()); ++k) {
      int s = sign_at_root(fq.derivative(k), q, c);
      if (s != 0) {
        order = k;
        order_sign = s;
        break;
      }
    }
    if (order == 0 || order % 2 == 1) continue;
    if (!c.exact()) {
      irrational.emplace_back(c, order_sign);
      continue;
    }
    Candidate& best = order_sign > 0 ? best_min : best_max;
    if (!beats(c, best, order_sign > 0 ? -1 : 1)) continue;
    S x = from_rational<S>(c.value());
    best = Candidate{FermatReal<S>(p->derivative_at(0, x)), FermatReal<S>(x), {}};
  }
  std::optional<Candidate> irr_min, irr_max;
  for (auto& [c, order_sign] : irrational) {
    Candidate& best = order_sign > 0 ? best_min : best_max;
    if (!beats(c, best, order_sign > 0 ? -1 : 1)) continue;
    if constexpr (ScalarTraits<S>::exact) {
      fail(ErrorCode::root_not_exact, "an extremum sits at an irrational critical point");
    } else {
      refine_root(q, c, Rational(BigInt(1), mp::pow(BigInt(10), BigFloat::default_precision())));
      S x = from_rational<S>((c.lo + c.hi) / 2);
      Candidate cand{FermatReal<S>(p->derivative_at(0, x)), FermatReal<S>(x), c};
      auto& slot = order_sign > 0 ? irr_min : irr_max;
      bool better = !slot || (order_sign > 0 ? cand.value < slot->value : cand.value > slot->value);
      if (better) slot = cand;
    }
  }
  if (irr_min) best_min = *irr_min;
  if (irr_max) best_max = *irr_max;
  return {best_min.value, best_min.arg, best_max.value, best_max.arg};
}

}  // namespace fermat
