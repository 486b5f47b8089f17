#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fermat/slice_solver.hpp"

namespace fermat {

struct SplitBoundary {
  RealEndpoint::Kind kind = RealEndpoint::Kind::finite;
  IsolatedRoot point;

  static SplitBoundary from(const RealEndpoint& e) { return {e.kind, {e.value, e.value}}; }
  static SplitBoundary at(const IsolatedRoot& r) { return {RealEndpoint::Kind::finite, r}; }
};

struct SplitResult {
  std::vector<IsolatedRoot> split_points;
  std::vector<std::pair<SplitBoundary, SplitBoundary>> intervals;
};

inline std::string describe(const SplitBoundary& b) {
  switch (b.kind) {
    case RealEndpoint::Kind::neg_inf: return "-inf";
    case RealEndpoint::Kind::pos_inf: return "inf";
    case RealEndpoint::Kind::finite: return describe(b.point);
  }
  return "?";
}

// "(-inf, 0), (0, inf)"
inline std::string describe(const SplitResult& r) {
  std::string out;
  for (const auto& [lo, hi] : r.intervals) {
    if (!out.empty()) out += ", ";
    out += "(" + describe(lo) + ", " + describe(hi) + ")";
  }
  return out;
}

namespace detail {

// Per-parameter bound on a_v: derivative orders beyond it meet (δv)^k = 0
// or vanish identically.
template <Scalar S>
std::vector<unsigned> parameter_orders(const PartialOracle<S>& h, std::span<const FermatReal<S>> v) {
  const MultiPoly* poly = h.polynomial();
  std::vector<unsigned> bounds;
  for (std::size_t l = 0; l < v.size(); ++l) {
    std::optional<int> deg;
    if (poly) deg = static_cast<int>(poly->degree_in(l));
    bounds.push_back(static_cast<unsigned>(taylor_order(nilpotency_index(v[l]), deg)));
  }
  return bounds;
}

// Calls visit(a_v) for every nonzero a_v in the box [0, bounds].
inline void for_each_mixed_index(const std::vector<unsigned>& bounds,
                                 const std::function<bool(const std::vector<unsigned>&)>& visit) {
  std::vector<unsigned> idx(bounds.size(), 0);
  for (;;) {
    std::size_t l = 0;
    while (l < idx.size() && idx[l] == bounds[l]) idx[l++] = 0;
    if (l == idx.size()) return;
    ++idx[l];
    if (!visit(idx)) return;
  }
}

template <Scalar S>
void check_parameters(const PartialOracle<S>& h, std::span<const FermatReal<S>> v) {
  if (h.arity() != v.size() + 1) {
    fail(ErrorCode::invalid_argument, "expected " + std::to_string(h.arity() - 1) + " parameters, got " +
                                          std::to_string(v.size()));
  }
}

}  // namespace detail

// Least m >= 1 with D^{(0,m)}h(°v, x0) ≠ 0.
template <Scalar S>
unsigned slice_order_at(const PartialOracle<S>& h, std::span<const FermatReal<S>> v, const S& x0) {
  detail::check_parameters(h, v);
  std::size_t k = v.size();
  std::vector<S> point;
  for (const auto& p : v) point.push_back(p.standard_part());
  point.push_back(x0);
  const MultiPoly* poly = h.polynomial();
  unsigned cap = poly ? poly->degree_in(k) : h.search_cap();
  std::vector<unsigned> index(k + 1, 0);
  for (unsigned n = 1; n <= cap; ++n) {
    index[k] = n;
    if (!ScalarTraits<S>::negligible(h.partial(index, point))) return n;
  }
  fail(ErrorCode::no_finite_m, "every y-derivative up to order " + std::to_string(cap) + " vanishes at " +
                                   ScalarTraits<S>::str(x0));
}

// D^{(a_v, a_x)} h(°v, x0) = 0 for all a_v and 0 < a_x < m.
template <Scalar S>
bool ivp_criterion_at(const PartialOracle<S>& h, std::span<const FermatReal<S>> v, const S& x0) {
  unsigned m = slice_order_at(h, v, x0);
  std::vector<S> point;
  for (const auto& p : v) point.push_back(p.standard_part());
  point.push_back(x0);
  std::vector<unsigned> bounds = detail::parameter_orders(h, v);
  bool holds = true;
  detail::for_each_mixed_index(bounds, [&](const std::vector<unsigned>& av) {
    std::vector<unsigned> index = av;
    index.push_back(0);
    for (unsigned ax = 1; ax < m; ++ax) {
      index.back() = ax;
      if (!ScalarTraits<S>::negligible(h.partial(index, point))) {
        holds = false;
        return false;
      }
    }
    return true;
  });
  return holds;
}

// Splits the interval at the real points where the IVP criterion fails.
template <Scalar S>
SplitResult split_domain(const PartialOracle<S>& h, std::span<const FermatReal<S>> v,
                         const RealInterval& interval = RealInterval::whole_line(),
                         const Rational& width = default_isolation_width()) {
  detail::check_parameters(h, v);
  const MultiPoly* poly = h.polynomial();
  if (!poly) fail(ErrorCode::invalid_argument, "split_domain needs a polynomial");
  std::size_t k = v.size();
  std::vector<Rational> base;
  for (const auto& p : v) base.push_back(ScalarTraits<S>::to_rational(p.standard_part()));
  auto slice = [&](std::vector<unsigned> av, unsigned ax) {
    av.push_back(ax);
    return poly->derivative(av).template slice_last<Rational>(base);
  };
  std::vector<unsigned> none(k, 0);
  QPoly q1 = slice(none, 1);
  if (q1.is_zero()) fail(ErrorCode::no_finite_m, "the y-derivative vanishes identically on the slice");
  QPoly q = squarefree_part(q1);
  std::vector<unsigned> bounds = detail::parameter_orders(h, v);
  unsigned deg_y = poly->degree_in(k);

  SplitResult out;
  for (IsolatedRoot root : isolate_real_roots(q1, interval, width)) {
    unsigned m = 0;
    for (unsigned n = 2; n <= deg_y && m == 0; ++n) {
      if (sign_at_root(slice(none, n), q, root) != 0) m = n;
    }
    if (m == 0) fail(ErrorCode::no_finite_m, "no finite y-order at " + describe(root));
    bool holds = true;
    detail::for_each_mixed_index(bounds, [&](const std::vector<unsigned>& av) {
      for (unsigned ax = 1; ax < m; ++ax) {
        if (sign_at_root(slice(av, ax), q, root) != 0) {
          holds = false;
          return false;
        }
      }
      return true;
    });
    if (!holds) out.split_points.push_back(root);
  }

  SplitBoundary lo = SplitBoundary::from(interval.lo);
  for (const auto& p : out.split_points) {
    out.intervals.emplace_back(lo, SplitBoundary::at(p));
    lo = SplitBoundary::at(p);
  }
  out.intervals.emplace_back(lo, SplitBoundary::from(interval.hi));
  return out;
}

// Leading-term algorithm for •h(v, y) = w on the slice x0 + D_∞. It is
// sound where ivp_criterion_at holds; elsewhere it may fail with
// leading_term_mismatch.
template <Scalar S>
SliceSolution<S> solve_parametric_leading(const PartialOracle<S>& h, std::span<const FermatReal<S>> v,
                                          const S& x0, const FermatReal<S>& w,
                                          const SolveOptions& options = {}) {
  unsigned m = slice_order_at(h, v, x0);
  std::vector<S> point;
  for (const auto& p : v) point.push_back(p.standard_part());
  point.push_back(x0);
  std::vector<unsigned> index(v.size() + 1, 0);
  index.back() = m;
  S dm = h.partial(index, point);
  std::vector<FermatReal<S>> args(v.begin(), v.end());
  args.emplace_back();
  auto eval = [&](const FermatReal<S>& y) {
    args.back() = y;
    return fermat_extend_multi<S>(h, args);
  };
  detail::RecomputeTracker<S, decltype(eval)> tracker(eval, x0);
  return detail::leading_term_solve<S>(tracker, x0, SliceClass::of(m, sign(dm)), dm, w, options);
}

struct NewtonOptions {
  std::size_t depth_cap = 64;
  std::size_t node_cap = 20000;
};

// Searches y in x0 + D_∞ with •h(v, y) = w by Newton-polygon expansion
// of the residual in y - x0. Exact backend, polynomial h. Only rational
// branch coefficients are followed, so nullopt means "no witness found".
std::optional<FermatReal<Rational>> solve_parametric_slice(std::shared_ptr<const PartialOracle<Rational>> h,
                                                           std::span<const FermatReal<Rational>> v,
                                                           const Rational& x0, const FermatReal<Rational>& w,
                                                           const NewtonOptions& options = {});

}  // namespace fermat
