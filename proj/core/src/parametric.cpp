#include "fermat/parametric.hpp"

#include <algorithm>

namespace fermat {

namespace {

using FR = FermatReal<Rational>;

Rational valuation(const FR& x) { return x.standard_part() != 0 ? Rational(0) : x.leading_term().exponent.value(); }

Rational leading_coefficient(const FR& x) {
  return x.standard_part() != 0 ? x.standard_part() : x.leading_term().coefficient;
}

struct Point {
  unsigned n;
  Rational val;
  Rational lc;
};

// Lower convex hull of points sorted by n.
std::vector<Point> lower_hull(const std::vector<Point>& pts) {
  std::vector<Point> hull;
  for (const auto& p : pts) {
    while (hull.size() >= 2) {
      const Point& a = hull[hull.size() - 2];
      const Point& b = hull.back();
      // drop b when it lies on or above segment a-p
      Rational cross = (b.val - a.val) * (p.n - a.n) - (p.val - a.val) * (b.n - a.n);
      if (cross >= 0) {
        hull.pop_back();
      } else {
        break;
      }
    }
    hull.push_back(p);
  }
  return hull;
}

struct Search {
  // coefficient oracles of the Taylor expansion in y: term[n] = Σ_e t^e α_e^{(n)}/n!
  std::vector<std::vector<std::pair<Rational, Oracle<Rational>>>> taylor;
  Rational x0;
  FR w;
  NewtonOptions options;
  std::size_t nodes = 0;

  std::vector<FR> coefficients(const FR& z) const {
    std::vector<FR> d;
    FR y = FR(x0) + z;
    for (std::size_t n = 0; n < taylor.size(); ++n) {
      FR acc;
      for (const auto& [e, f] : taylor[n]) acc += fermat_extend(*f, y) * FR::monomial(Rational(1), e);
      if (n == 0) acc -= w;
      d.push_back(std::move(acc));
    }
    return d;
  }

  std::optional<FR> dfs(const FR& z, const Rational& previous, std::size_t depth) {
    if (++nodes > options.node_cap || depth > options.depth_cap) return std::nullopt;
    std::vector<FR> d = coefficients(z);
    if (d[0].is_zero()) return FR(x0) + z;
    std::vector<Point> pts;
    for (unsigned n = 0; n < d.size(); ++n) {
      if (!d[n].is_zero()) pts.push_back({n, valuation(d[n]), leading_coefficient(d[n])});
    }
    std::vector<Point> hull = lower_hull(pts);
    for (std::size_t i = 0; i + 1 < hull.size(); ++i) {
      const Point& p = hull[i];
      const Point& q = hull[i + 1];
      Rational b = (p.val - q.val) / (q.n - p.n);
      if (!(b > previous) || b > 1) continue;
      std::vector<Rational> edge(q.n - p.n + 1, Rational(0));
      for (const auto& r : pts) {
        if (r.n >= p.n && r.n <= q.n && r.val + r.n * b == p.val + p.n * b) edge[r.n - p.n] = r.lc;
      }
      for (const auto& root : isolate_real_roots(QPoly(edge), RealInterval::whole_line())) {
        if (!root.exact() || root.value() == 0) continue;
        if (auto found = dfs(z + FR::monomial(root.value(), b), b, depth + 1)) return found;
      }
    }
    return std::nullopt;
  }
};

}  // namespace

std::optional<FR> solve_parametric_slice(std::shared_ptr<const PartialOracle<Rational>> h,
                                         std::span<const FR> v, const Rational& x0, const FR& w,
                                         const NewtonOptions& options) {
  if (!h->polynomial()) fail(ErrorCode::invalid_argument, "Newton search needs a polynomial");
  QSFunction<Rational> g = expand_parametric<Rational>(h, v);
  Search search{{}, x0, w, options};
  for (const auto& c : g.components()) {
    const QPoly* p = c.coefficient->polynomial();
    for (int n = 0; n <= p->degree(); ++n) {
      QPoly dn = p->derivative(static_cast<unsigned>(n)).scale(1 / factorial(static_cast<unsigned>(n)));
      if (search.taylor.size() <= static_cast<std::size_t>(n)) search.taylor.resize(n + 1);
      search.taylor[n].emplace_back(c.exponent, polynomial_oracle<Rational>(dn));
    }
  }
  if (search.taylor.empty()) search.taylor.resize(1);
  return search.dfs(FR(), Rational(0), 0);
}

}  // namespace fermat
