#include "fermat/roots.hpp"

#include <algorithm>

namespace fermat {

namespace {

using Sturm = std::vector<QPoly>;

Sturm sturm_sequence(const QPoly& q) {
  Sturm s{q, q.derivative()};
  while (!s.back().is_zero()) {
    QPoly r = divmod(s[s.size() - 2], s.back()).second;
    if (r.is_zero()) break;
    s.push_back(r.scale(Rational(-1)));
  }
  if (s.back().is_zero()) s.pop_back();
  return s;
}

std::size_t changes(const std::vector<int>& signs) {
  std::size_t n = 0;
  int last = 0;
  for (int s : signs) {
    if (s == 0) continue;
    if (last != 0 && s != last) ++n;
    last = s;
  }
  return n;
}

std::size_t variations_at(const Sturm& s, const Rational& x) {
  std::vector<int> signs;
  signs.reserve(s.size());
  for (const auto& p : s) signs.push_back(sign(p(x)));
  return changes(signs);
}

Rational floor_q(const Rational& x) {
  BigInt n = mp::numerator(x);
  BigInt d = mp::denominator(x);
  BigInt q = n / d;
  if (n < 0 && q * d != n) q -= 1;
  return Rational(q);
}

Rational cauchy_bound(const QPoly& q) {
  Rational m(0);
  const auto& c = q.coefficients();
  for (std::size_t i = 0; i + 1 < c.size(); ++i) m = std::max(m, Rational(mp::abs(c[i] / q.leading())));
  return m + 2;
}

// Leading coefficient of the primitive integer multiple of q.
BigInt integer_leading(const QPoly& q) {
  BigInt l(1);
  for (const auto& c : q.coefficients()) {
    BigInt d = mp::denominator(c);
    l = l / mp::gcd(l, d) * d;
  }
  BigInt content(0);
  for (const auto& c : q.coefficients()) content = mp::gcd(content, BigInt(mp::numerator(c) * (l / mp::denominator(c))));
  BigInt lead = mp::numerator(q.leading()) * (l / mp::denominator(q.leading()));
  return mp::abs(lead / content);
}

struct Isolator {
  const QPoly& q;
  Sturm sturm;
  Rational width;
  std::vector<IsolatedRoot> out;

  // Roots in (lo, hi); the endpoints are not roots or are excluded.
  std::size_t count(const Rational& lo, const Rational& hi) const {
    std::size_t v = variations_at(sturm, lo) - variations_at(sturm, hi);
    if (q(hi) == 0) --v;
    return v;
  }

  void finish(Rational lo, Rational hi) {
    IsolatedRoot r{std::move(lo), std::move(hi)};
    refine(r);
    out.push_back(std::move(r));
  }

  void refine(IsolatedRoot& r) const {
    while (!r.exact() && r.hi - r.lo > width) {
      Rational mid = (r.lo + r.hi) / 2;
      if (q(mid) == 0) {
        r.lo = r.hi = mid;
      } else if (count(r.lo, mid) == 1) {
        r.hi = mid;
      } else {
        r.lo = mid;
      }
    }
    if (!r.exact()) {
      Rational s = simplest_between(r.lo, r.hi);
      if (q(s) == 0) r.lo = r.hi = s;
    }
  }

  void split(const Rational& lo, const Rational& hi, std::size_t n) {
    if (n == 0) return;
    if (n == 1) {
      finish(lo, hi);
      return;
    }
    Rational mid = (lo + hi) / 2;
    std::size_t left = count(lo, mid);
    split(lo, mid, left);
    std::size_t right = n - left;
    if (q(mid) == 0) {
      out.push_back({mid, mid});
      --right;
    }
    split(mid, hi, right);
  }
};

Rational isolation_width_for(const QPoly& q, const Rational& max_width) {
  BigInt lead = integer_leading(q);
  Rational sep(BigInt(1), lead * lead + 1);
  return std::min(max_width, sep);
}

}  // namespace

Rational default_isolation_width() { return Rational(BigInt(1), BigInt(1) << 20); }

Rational simplest_between(const Rational& lo, const Rational& hi) {
  if (!(lo < hi)) fail(ErrorCode::invalid_argument, "empty interval");
  Rational f = floor_q(lo);
  if (f + 1 < hi) return f + 1;
  if (f == lo) {
    Rational y = floor_q(1 / (hi - f)) + 1;
    return f + 1 / y;
  }
  return f + 1 / simplest_between(1 / (hi - f), 1 / (lo - f));
}

std::size_t count_real_roots(const QPoly& p, const Rational& lo, const Rational& hi) {
  if (p.is_zero()) fail(ErrorCode::invalid_argument, "zero polynomial has no isolated roots");
  QPoly q = squarefree_part(p);
  if (q.degree() <= 0 || !(lo < hi)) return 0;
  Isolator iso{q, sturm_sequence(q), Rational(0), {}};
  return iso.count(lo, hi);
}

std::vector<IsolatedRoot> isolate_real_roots(const QPoly& p, const RealInterval& interval,
                                             const Rational& max_width) {
  if (p.is_zero()) fail(ErrorCode::invalid_argument, "zero polynomial has no isolated roots");
  if (!(max_width > 0)) fail(ErrorCode::invalid_argument, "isolation width must be positive");
  QPoly q = squarefree_part(p);
  if (q.degree() <= 0) return {};
  Rational bound = cauchy_bound(q);
  Rational lo = interval.lo.finite() ? interval.lo.value : -bound;
  Rational hi = interval.hi.finite() ? interval.hi.value : bound;
  if (!(lo < hi)) return {};
  Isolator iso{q, sturm_sequence(q), isolation_width_for(q, max_width), {}};
  iso.split(lo, hi, iso.count(lo, hi));
  std::sort(iso.out.begin(), iso.out.end(),
            [](const IsolatedRoot& a, const IsolatedRoot& b) { return a.lo < b.lo; });
  return iso.out;
}

void refine_root(const QPoly& q, IsolatedRoot& root, const Rational& max_width) {
  Isolator iso{q, sturm_sequence(q), isolation_width_for(q, max_width), {}};
  iso.refine(root);
}

int sign_at_root(const QPoly& g, const QPoly& q, IsolatedRoot& r) {
  if (r.exact()) return sign(g(r.value()));
  if (g.is_zero()) return 0;
  QPoly common = gcd(g, q);
  if (common.degree() > 0 && count_real_roots(common, r.lo, r.hi) > 0) return 0;
  Sturm qs = sturm_sequence(q);
  for (;;) {
    if (count_real_roots(g, r.lo, r.hi) == 0 && g(r.lo) != 0 && g(r.hi) != 0) {
      return sign(g(r.lo));
    }
    Rational mid = (r.lo + r.hi) / 2;
    if (q(mid) == 0) {
      r.lo = r.hi = mid;
      return sign(g(mid));
    }
    std::size_t left = variations_at(qs, r.lo) - variations_at(qs, mid);
    if (left == 1) {
      r.hi = mid;
    } else {
      r.lo = mid;
    }
  }
}

std::string describe(const IsolatedRoot& r) {
  if (r.exact()) return to_string(r.lo);
  return "root in (" + to_string(r.lo) + ", " + to_string(r.hi) + ")";
}

std::string describe(const RealEndpoint& e) {
  switch (e.kind) {
    case RealEndpoint::Kind::neg_inf: return "-inf";
    case RealEndpoint::Kind::pos_inf: return "inf";
    case RealEndpoint::Kind::finite: return to_string(e.value);
  }
  return "?";
}

}  // namespace fermat
