#include <functional>

#include "fermat/smooth_ext.hpp"

namespace fermat {

namespace {

// True when some s != j has s·a == j·a.
bool collides(const std::vector<unsigned>& j, const std::vector<Rational>& a) {
  Rational target(0);
  for (std::size_t l = 0; l < j.size(); ++l) target += a[l] * j[l];
  std::vector<unsigned> s(j.size(), 0);
  std::function<bool(std::size_t, const Rational&)> walk = [&](std::size_t l, const Rational& sum) {
    if (l == j.size()) return sum == target && s != j;
    for (unsigned k = 0;; ++k) {
      Rational next = sum + a[l] * k;
      if (next > target) break;
      s[l] = k;
      if (walk(l + 1, next)) return true;
    }
    s[l] = 0;
    return false;
  };
  return walk(0, Rational(0));
}

}  // namespace

std::vector<Rational> separating_exponents(std::span<const unsigned> j) {
  if (j.empty()) fail(ErrorCode::invalid_argument, "empty multi-index");
  unsigned total = 0;
  for (unsigned x : j) total += x;
  if (total == 0) fail(ErrorCode::invalid_argument, "multi-index must be nonzero");
  std::vector<unsigned> jv(j.begin(), j.end());
  std::size_t m = jv.size();
  BigInt base(total + 1);
  std::vector<BigInt> c(m, BigInt(0));
  BigInt power(1);
  for (std::size_t l = 1; l < m; ++l) {
    c[l] = c[l - 1] + power;
    power *= base;
  }
  for (unsigned n = 1; n <= 1u << 16; ++n) {
    std::vector<Rational> a(m);
    for (std::size_t l = 0; l < m; ++l) a[l] = 1 + Rational(c[l], BigInt(n));
    if (collides(jv, a)) continue;
    Rational sum(0);
    for (std::size_t l = 0; l < m; ++l) sum += a[l] * jv[l];
    for (auto& x : a) x /= sum;
    // Unused variables may land above 1; shrink them into (0, 1].
    for (std::size_t l = 0; l < m; ++l) {
      if (a[l] <= 1) continue;
      Rational original = a[l];
      bool placed = false;
      for (unsigned k = 2; k <= 1u << 16 && !placed; ++k) {
        a[l] = original / k;
        placed = a[l] <= 1 && !collides(jv, a);
      }
      if (!placed) fail(ErrorCode::invalid_argument, "no separating exponents found");
    }
    return a;
  }
  fail(ErrorCode::invalid_argument, "no separating exponents found");
}

}  // namespace fermat
