#include <gtest/gtest.h>

#include "../support/instances.hpp"

using namespace fermat;
using namespace fermat::testing;

namespace {

FR mono(Rational c, Rational e) { return FR::monomial(std::move(c), e); }
FR t() { return FR::t(); }
Oracle<Rational> poly(std::vector<Rational> c) { return polynomial_oracle<Rational>(c); }

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an error";
  return ErrorCode::domain_error;
}

FR infinitesimal_above(const Rational& threshold) {
  std::vector<FR::RawTerm> raw;
  for (long k = uniform(1, 3); k > 0; --k) {
    long q = uniform(1, 12);
    Rational e(uniform(1, q), q);
    if (e > threshold) raw.push_back({e, nonzero_rational(5)});
  }
  return FR::normalize(0, std::move(raw));
}

}  // namespace

TEST(Classify, Examples) {
  EXPECT_EQ(classify_slice(*powint_oracle<Rational>(3), Rational(0)), SliceClass::of(3, 1));
  EXPECT_EQ(classify_slice(*powint_oracle<Rational>(2), Rational(0)), SliceClass::of(2, 1));
  EXPECT_EQ(describe(SliceClass::of(2, 1)), "Even(2, +)");
  EXPECT_TRUE(classify_slice(*flat_exp_oracle<Rational>(), Rational(0)).is_flat());
  EXPECT_TRUE(classify_slice(*poly({5}), Rational(2)).is_flat());
  EXPECT_EQ(classify_slice(*poly({0, 0, -1, 0, 1}), Rational(0)), SliceClass::of(2, -1));
}

TEST(Classify, UnresolvedOracle) {
  auto zero = lambda_oracle<Rational>("zero", [](unsigned, const Rational&) { return Rational(0); }, {}, 10);
  EXPECT_EQ(code_of([&] { classify_slice(*zero, Rational(0)); }), ErrorCode::unresolved_classification);
}

TEST(Membership, Examples) {
  EXPECT_FALSE(slice_image_contains(*powint_oracle<Rational>(2), Rational(0), -t()));
  EXPECT_TRUE(slice_image_contains(*powint_oracle<Rational>(3), Rational(0), mono(-5, Rational(1, 2)) + t()));
  EXPECT_TRUE(slice_image_contains(*flat_exp_oracle<Rational>(), Rational(0), FR()));
  EXPECT_FALSE(slice_image_contains(*flat_exp_oracle<Rational>(), Rational(0), t()));
  EXPECT_FALSE(slice_image_contains(*powint_oracle<Rational>(3), Rational(0), FR(Rational(1)) + t()));
}

TEST(Solve, Examples) {
  auto cube = powint_oracle<Rational>(3);
  EXPECT_EQ(solve_slice(*cube, Rational(0), t()), mono(1, Rational(1, 3)));
  EXPECT_EQ(solve_slice(*cube, Rational(0), mono(1, Rational(1, 2)) + t()),
            mono(1, Rational(1, 6)) + mono(Rational(1, 3), Rational(2, 3)));
  EXPECT_EQ(solve_slice(*poly({0, 1, 1}), Rational(0), t()), t());
  EXPECT_EQ(solve_slice(*powint_oracle<Rational>(2), Rational(0), t(), {RootChoice::negative}),
            mono(-1, Rational(1, 2)));
  EXPECT_EQ(code_of([&] { solve_slice(*powint_oracle<Rational>(2), Rational(0), -t()); }),
            ErrorCode::not_in_slice_image);
  EXPECT_EQ(code_of([&] { solve_slice(*powint_oracle<Rational>(2), Rational(0), mono(2, 1)); }),
            ErrorCode::root_not_exact);
}

TEST(Solve, StepCap) {
  SolveOptions options;
  options.step_cap = 1;
  EXPECT_EQ(code_of([&] { solve_slice(*powint_oracle<Rational>(3), Rational(0), mono(1, Rational(1, 2)) + t(), options); }),
            ErrorCode::step_cap_exceeded);
}

TEST(Solve, FloatBackend) {
  PrecisionScope scope(50);
  using FB = FermatReal<BigFloat>;
  auto sq = powint_oracle<BigFloat>(2);
  FB w = FB::monomial(BigFloat(2), Rational(1));
  FB x = solve_slice(*sq, BigFloat(0), w);
  EXPECT_LT(abs_value(BigFloat(x.coefficient(Rational(1, 2)) - boost::multiprecision::sqrt(BigFloat(2)))), BigFloat(1e-45));
  EXPECT_TRUE(slice_image_contains(*sq, BigFloat(0), fermat_extend(*sq, x)));
}

TEST(Solve, RandomOddInstancesRoundTrip) {
  for (int i = 0; i < 150; ++i) {
    unsigned m = static_cast<unsigned>(2 * uniform(0, 2) + 1);
    OrderInstance inst = order_instance(m, coin() ? 1 : -1);
    auto f = poly(inst.coefficients);
    FR x = slice_point(inst.a, 4, 8, 3);
    FR w = fermat_extend(*f, x);
    auto sol = solve_slice_traced(*f, inst.a, w);
    EXPECT_EQ(fermat_extend(*f, sol.solution), w);
    for (std::size_t k = 1; k < sol.steps.size(); ++k) EXPECT_LT(sol.steps[k - 1].exponent, sol.steps[k].exponent);
  }
}

TEST(Refine, Examples) {
  auto cube = powint_oracle<Rational>(3);
  EXPECT_EQ(refine_to_fundamental(*cube, mono(1, Rational(1, 3)) + mono(1, Rational(1, 2))), mono(1, Rational(1, 3)));
  FR y = FR(Rational(1)) + mono(2, Rational(1, 5)) + t();
  EXPECT_EQ(refine_to_fundamental(*poly({0, 1}), y), y);
}

TEST(Family, Examples) {
  auto fam = solution_family(*powint_oracle<Rational>(3), Rational(0), t());
  EXPECT_EQ(fam.fundamental, mono(1, Rational(1, 3)));
  EXPECT_EQ(fam.threshold, Rational(1, 3));
  fam = solution_family(*poly({0, 1}), Rational(0), mono(1, Rational(1, 2)));
  EXPECT_EQ(fam.threshold, 1);
  fam = solution_family(*powint_oracle<Rational>(2), Rational(0), t());
  EXPECT_EQ(fam.fundamental, mono(1, Rational(1, 2)));
  EXPECT_EQ(fam.threshold, Rational(1, 2));
  fam = solution_family(*powint_oracle<Rational>(3), Rational(0), FR());
  EXPECT_TRUE(fam.fundamental.is_zero());
  EXPECT_EQ(fam.threshold, Rational(1, 3));
  EXPECT_EQ(code_of([&] { solution_family(*flat_exp_oracle<Rational>(), Rational(0), FR()); }),
            ErrorCode::invalid_argument);
}

TEST(Family, Soundness) {
  for (int i = 0; i < 40; ++i) {
    unsigned m = static_cast<unsigned>(uniform(1, 4));
    OrderInstance inst = order_instance(m, 1);
    auto f = poly(inst.coefficients);
    FR x = slice_point(inst.a, 3, 6, 3);
    FR w = fermat_extend(*f, x);
    SolutionFamily<Rational> fam;
    try {
      fam = solution_family(*f, inst.a, w);
    } catch (const Error& e) {
      ASSERT_EQ(e.code(), ErrorCode::root_not_exact);
      continue;
    }
    EXPECT_EQ(refine_to_fundamental(*f, fam.fundamental), fam.fundamental);
    for (int k = 0; k < 100; ++k) {
      FR z = infinitesimal_above(fam.threshold);
      EXPECT_EQ(fermat_extend(*f, fam.fundamental + z), w);
      EXPECT_EQ(refine_to_fundamental(*f, fam.fundamental + z), fam.fundamental);
    }
  }
}

TEST(EvenCase, BothSidesReachTheSameValues) {
  for (int i = 0; i < 60; ++i) {
    unsigned m = static_cast<unsigned>(2 * uniform(1, 2));
    OrderInstance inst = order_instance(m, coin() ? 1 : -1);
    auto f = poly(inst.coefficients);
    FR x = slice_point(inst.a, 3, 6, 3);
    FR w = fermat_extend(*f, x);
    FR pos = solve_slice(*f, inst.a, w, {RootChoice::positive});
    FR neg = solve_slice(*f, inst.a, w, {RootChoice::negative});
    EXPECT_EQ(fermat_extend(*f, pos), w);
    EXPECT_EQ(fermat_extend(*f, neg), w);
    EXPECT_GE(pos, FR(inst.a));
    EXPECT_LE(neg, FR(inst.a));
  }
}

TEST(Boundary, NothingBelowTheMinimum) {
  for (int i = 0; i < 60; ++i) {
    Rational r = rational(3, 2), c = rational(3, 2);
    std::vector<Rational> shifted{c, 0, abs_value(nonzero_rational(3)), 0, abs_value(rational(2))};
    auto f = poly(shifted_to_monomial(shifted, r));
    for (int k = 0; k < 20; ++k) {
      FR d = random_fr(3, 8, 4, true);
      if (d.is_zero()) continue;
      FR w = FR(c) - abs(d);
      EXPECT_FALSE(slice_image_contains(*f, r, w));
      EXPECT_TRUE(slice_image_contains(*f, r, FR(c) + abs(d)));
    }
  }
}

TEST(SliceMonotonicity, MatchesLeadingTermPrediction) {
  for (unsigned m = 1; m <= 4; ++m) {
    for (int s : {1, -1}) {
      for (int i = 0; i < 60; ++i) {
        OrderInstance inst = order_instance(m, s, 5);
        auto f = poly(inst.coefficients);
        FR x1 = slice_point(inst.a), x2 = slice_point(inst.a);
        if (m % 2 == 0) {
          x1 = FR(inst.a) + abs(x1 - FR(inst.a));
          x2 = FR(inst.a) + abs(x2 - FR(inst.a));
          if (coin()) {
            x1 = FR(inst.a) - (x1 - FR(inst.a));
            x2 = FR(inst.a) - (x2 - FR(inst.a));
          }
        }
        if (x1 == x2) continue;
        if (x2 < x1) std::swap(x1, x2);
        EXPECT_EQ(compare(fermat_extend(*f, x1), fermat_extend(*f, x2)), predicted_slice_order(m, inst.dm, x1, x2))
            << to_text(x1) << " vs " << to_text(x2) << " m=" << m;
      }
    }
  }
}

TEST(GlobalMonotonicity, Examples) {
  std::vector<Rational> grid{-1, 0, 1};
  EXPECT_EQ(classify_monotone_global<Rational>(*powint_oracle<Rational>(3), grid), Monotonicity::increasing);
  EXPECT_EQ(classify_monotone_global<Rational>(*powint_oracle<Rational>(2), grid), Monotonicity::unknown);
  EXPECT_EQ(classify_monotone_global<Rational>(*poly({0, 1, 0, Rational(1, 3)}), grid), Monotonicity::strictly_increasing);
  EXPECT_EQ(classify_monotone_global<Rational>(*poly({0, -1}), grid), Monotonicity::strictly_decreasing);
}

TEST(Ivp, Examples) {
  auto f = poly({0, -1, 0, 1});
  FR c = ivp_solve<Rational>(*f, FR(Rational(-2)), FR(Rational(2)), t());
  EXPECT_EQ(fermat_extend(*f, c), t());
  EXPECT_EQ(refine_to_fundamental(*f, c), FR(Rational(-1)) + mono(Rational(1, 2), 1));
  EXPECT_EQ(ivp_solve<Rational>(*powint_oracle<Rational>(3), FR(Rational(-1)), FR(Rational(1)), t()),
            mono(1, Rational(1, 3)));
  EXPECT_EQ(ivp_solve<Rational>(*f, FR(Rational(-2)), FR(Rational(2)), FR(Rational(-6))), FR(Rational(-2)));
  EXPECT_EQ(code_of([&] { ivp_solve<Rational>(*f, FR(Rational(-2)), FR(Rational(2)), FR(Rational(7))); }),
            ErrorCode::no_real_preimage);
  EXPECT_EQ(code_of([&] { ivp_solve<Rational>(*powint_oracle<Rational>(2), FR(Rational(0)), FR(Rational(2)), FR(Rational(2))); }),
            ErrorCode::root_not_exact);
}

TEST(Ivp, RandomPolynomialInstances) {
  int solved = 0;
  for (int i = 0; i < 100; ++i) {
    std::vector<Rational> c;
    for (long k = uniform(1, 5); k >= 0; --k) c.push_back(rational(3, 2));
    auto f = poly(c);
    FR a = FR(rational(2, 2)) + random_fr(2, 6, 2, true);
    FR b = a + FR(abs_value(nonzero_rational(2, 2))) + random_fr(2, 6, 2, true);
    FR fa = fermat_extend(*f, a), fb = fermat_extend(*f, b);
    if (fa == fb) continue;
    // Targets whose real part is the value at a rational point in between.
    Rational mid = (a.standard_part() + b.standard_part()) / 2;
    FR y = FR(horner(c, mid)) + random_fr(2, 6, 2, true);
    FR lo = std::min(fa, fb), hi = std::max(fa, fb);
    if (!(lo < y && y < hi)) continue;
    try {
      FR x = ivp_solve<Rational>(*f, a, b, y);
      EXPECT_EQ(fermat_extend(*f, x), y);
      EXPECT_LT(a, x);
      EXPECT_LT(x, b);
      ++solved;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::root_not_exact) << e.what();
    }
  }
  EXPECT_GT(solved, 10);
}

TEST(Extrema, Examples) {
  auto sq = powint_oracle<Rational>(2);
  auto e = extrema_on_interval<Rational>(*sq, FR(Rational(-1)) + t(), FR(Rational(1)));
  EXPECT_EQ(e.min, FR());
  EXPECT_EQ(e.argmin, FR());
  EXPECT_EQ(e.max, FR(Rational(1)));
  EXPECT_EQ(e.argmax, FR(Rational(1)));

  auto id = poly({0, 1});
  e = extrema_on_interval<Rational>(*id, t(), FR(Rational(1)) + t());
  EXPECT_EQ(e.min, t());
  EXPECT_EQ(e.max, FR(Rational(1)) + t());

  auto f = poly({0, -1, 0, 1});
  e = extrema_on_interval<Rational>(*f, FR(Rational(-2)), FR(Rational(2)));
  EXPECT_EQ(e.min, FR(Rational(-6)));
  EXPECT_EQ(e.argmin, FR(Rational(-2)));
  EXPECT_EQ(e.max, FR(Rational(6)));
  EXPECT_EQ(e.argmax, FR(Rational(2)));

  EXPECT_EQ(code_of([&] { extrema_on_interval<Rational>(*f, FR(Rational(-1)), FR(Rational(1))); }),
            ErrorCode::root_not_exact);
  PrecisionScope scope(40);
  using FB = FermatReal<BigFloat>;
  auto g = polynomial_oracle<BigFloat>(std::vector<Rational>{0, -1, 0, 1});
  auto eb = extrema_on_interval<BigFloat>(*g, FB(BigFloat(-1)), FB(BigFloat(1)));
  BigFloat expected = BigFloat(2) / (3 * boost::multiprecision::sqrt(BigFloat(3)));
  EXPECT_LT(abs_value(BigFloat(eb.max.standard_part() - expected)), BigFloat(1e-30));
  EXPECT_LT(abs_value(BigFloat(eb.min.standard_part() + expected)), BigFloat(1e-30));
}
