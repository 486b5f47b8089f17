#pragma once

#include <string>
#include <vector>

#include "fermat/polynomial.hpp"

namespace fermat {

struct RealEndpoint {
  enum class Kind { neg_inf, finite, pos_inf };

  Kind kind = Kind::finite;
  Rational value;

  static RealEndpoint at(Rational v) { return {Kind::finite, std::move(v)}; }
  static RealEndpoint neg_inf() { return {Kind::neg_inf, Rational(0)}; }
  static RealEndpoint pos_inf() { return {Kind::pos_inf, Rational(0)}; }

  bool finite() const noexcept { return kind == Kind::finite; }
  friend bool operator==(const RealEndpoint& a, const RealEndpoint& b) {
    return a.kind == b.kind && (a.kind != Kind::finite || a.value == b.value);
  }
};

// Open real interval; either end may be infinite.
struct RealInterval {
  RealEndpoint lo = RealEndpoint::neg_inf();
  RealEndpoint hi = RealEndpoint::pos_inf();

  static RealInterval whole_line() { return {}; }
  static RealInterval open(Rational a, Rational b) {
    return {RealEndpoint::at(std::move(a)), RealEndpoint::at(std::move(b))};
  }
  bool contains(const Rational& x) const {
    return (!lo.finite() || lo.value < x) && (!hi.finite() || x < hi.value);
  }
};

// A real root: exact when lo == hi, otherwise the unique root of its
// defining polynomial inside the open interval (lo, hi).
struct IsolatedRoot {
  Rational lo;
  Rational hi;

  bool exact() const { return lo == hi; }
  const Rational& value() const { return lo; }
};

Rational default_isolation_width();  // 2^-20

// Smallest-denominator rational in the open interval (lo, hi).
Rational simplest_between(const Rational& lo, const Rational& hi);

std::vector<IsolatedRoot> isolate_real_roots(const QPoly& p, const RealInterval& interval,
                                             const Rational& max_width = default_isolation_width());

// Distinct real roots of p in the open interval (lo, hi).
std::size_t count_real_roots(const QPoly& p, const Rational& lo, const Rational& hi);

// Shrinks a non-exact root of the squarefree polynomial q until its width is
// at most max_width (it may become exact).
void refine_root(const QPoly& q, IsolatedRoot& root, const Rational& max_width);

// Sign of g at the root r of the squarefree polynomial q; refines r as needed.
int sign_at_root(const QPoly& g, const QPoly& q, IsolatedRoot& r);

std::string describe(const IsolatedRoot& r);
std::string describe(const RealEndpoint& e);

}  // namespace fermat
