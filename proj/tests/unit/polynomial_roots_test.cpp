#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "../support/gen.hpp"

using namespace fermat;
using namespace fermat::testing;

namespace {

QPoly from_roots(const std::vector<Rational>& roots) {
  QPoly p = QPoly::constant(1);
  for (const auto& r : roots) p = p * QPoly({-r, Rational(1)});
  return p;
}

}  // namespace

TEST(UniPoly, ArithmeticAndDerivatives) {
  QPoly p({Rational(1), Rational(-3), Rational(0), Rational(2)});  // 2u³ - 3u + 1
  EXPECT_EQ(p.degree(), 3);
  EXPECT_EQ(p(Rational(2)), 11);
  EXPECT_EQ(p.derivative(), QPoly({Rational(-3), Rational(0), Rational(6)}));
  EXPECT_EQ(p.derivative_at(2, Rational(1)), 12);
  EXPECT_EQ(p.derivative_at(4, Rational(1)), 0);
  EXPECT_TRUE((p - p).is_zero());
  EXPECT_EQ((p * p).degree(), 6);
}

TEST(UniPoly, DivisionAndGcd) {
  for (int i = 0; i < 200; ++i) {
    std::vector<Rational> ca, cb;
    for (long k = uniform(0, 5); k >= 0; --k) ca.push_back(rational());
    for (long k = uniform(0, 3); k >= 0; --k) cb.push_back(rational());
    QPoly a(ca), b(cb);
    if (b.is_zero()) continue;
    auto [q, r] = divmod(a, b);
    EXPECT_EQ(q * b + r, a);
    EXPECT_LT(r.degree(), b.degree());
  }
  QPoly g = gcd(from_roots({1, 2, 2}), from_roots({2, 3}));
  EXPECT_EQ(g, from_roots({2}));
  EXPECT_EQ(squarefree_part(from_roots({1, 1, 1, -2})), from_roots({1, -2}));
}

TEST(Roots, Examples) {
  auto r = isolate_real_roots(QPoly({Rational(0), Rational(0), Rational(3)}), RealInterval::whole_line());
  ASSERT_EQ(r.size(), 1u);
  EXPECT_TRUE(r[0].exact());
  EXPECT_EQ(r[0].lo, 0);

  r = isolate_real_roots(QPoly({Rational(0), Rational(-1), Rational(0), Rational(1)}), RealInterval::open(-2, 2));
  ASSERT_EQ(r.size(), 3u);
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_TRUE(r[i].exact());
    EXPECT_EQ(r[i].lo, Rational(static_cast<long>(i) - 1));
  }

  r = isolate_real_roots(QPoly({Rational(-2), Rational(0), Rational(1)}), RealInterval::open(0, 2));
  ASSERT_EQ(r.size(), 1u);
  EXPECT_FALSE(r[0].exact());
  EXPECT_LE(r[0].hi - r[0].lo, Rational(1, 1 << 20));
  EXPECT_LT(r[0].lo * r[0].lo, 2);
  EXPECT_GT(r[0].hi * r[0].hi, 2);
}

TEST(Roots, OpenIntervalExcludesEndpoints) {
  QPoly p = from_roots({-1, 1});
  EXPECT_TRUE(isolate_real_roots(p, RealInterval::open(-1, 1)).empty());
  EXPECT_EQ(count_real_roots(p, Rational(-1), Rational(1)), 0u);
  EXPECT_EQ(count_real_roots(p, Rational(-2), Rational(2)), 2u);
}

TEST(Roots, RecoversPlantedRoots) {
  for (int i = 0; i < 150; ++i) {
    std::vector<Rational> roots;
    for (long k = uniform(1, 5); k > 0; --k) roots.push_back(rational(5, 6));
    QPoly p = from_roots(roots);
    if (coin()) p = p * QPoly({Rational(uniform(1, 5)), Rational(0), Rational(1)});
    if (coin()) p = p * QPoly({Rational(-uniform(2, 3)), Rational(0), Rational(1)});
    auto iso = isolate_real_roots(p, RealInterval::whole_line());
    std::set<Rational> distinct(roots.begin(), roots.end());
    for (const auto& root : distinct) {
      auto hit = std::count_if(iso.begin(), iso.end(), [&](const IsolatedRoot& r) {
        return r.exact() ? r.lo == root : (r.lo < root && root < r.hi);
      });
      EXPECT_EQ(hit, 1) << to_string(root);
    }
    for (std::size_t k = 0; k + 1 < iso.size(); ++k) EXPECT_LT(iso[k].hi, iso[k + 1].lo);
    for (const auto& r : iso) {
      if (!r.exact()) EXPECT_LT(sign(p(r.lo)) * sign(p(r.hi)), 0);
    }
  }
}

TEST(Roots, SignAtIrrationalRoot) {
  QPoly q({Rational(-2), Rational(0), Rational(1)});
  auto iso = isolate_real_roots(q, RealInterval::open(0, 2));
  ASSERT_EQ(iso.size(), 1u);
  EXPECT_EQ(sign_at_root(QPoly({Rational(-7, 5), Rational(1)}), q, iso[0]), 1);
  EXPECT_EQ(sign_at_root(QPoly({Rational(-3, 2), Rational(1)}), q, iso[0]), -1);
  EXPECT_EQ(sign_at_root(QPoly({Rational(-4), Rational(0), Rational(2)}), q, iso[0]), 0);
}

TEST(Roots, SimplestBetween) {
  EXPECT_EQ(simplest_between(Rational(1, 3), Rational(1, 2)), Rational(2, 5));
  EXPECT_EQ(simplest_between(Rational(0), Rational(5)), Rational(1));
  EXPECT_EQ(simplest_between(Rational(3, 10), Rational(4, 10)), Rational(1, 3));
  EXPECT_EQ(simplest_between(Rational(-7, 3), Rational(-2)), Rational(-9, 4));
}

TEST(MultiPoly, PartialsAndSlices) {
  MultiPoly x = MultiPoly::variable(2, 0), y = MultiPoly::variable(2, 1);
  MultiPoly h = y.pow(3) + x * y.pow(2);
  std::vector<unsigned> idx{1, 1};
  std::vector<Rational> pt{Rational(0), Rational(1)};
  EXPECT_EQ(h.partial<Rational>(idx, pt), 2);
  EXPECT_EQ(h.derivative(idx), MultiPoly::variable(2, 1) + MultiPoly::variable(2, 1));
  EXPECT_EQ(h.degree_in(1), 3u);
  EXPECT_EQ(h.total_degree_in(0, 1), 1u);
  std::vector<Rational> prefix{Rational(2)};
  EXPECT_EQ(h.slice_last<Rational>(prefix), QPoly({Rational(0), Rational(0), Rational(2), Rational(1)}));
}
