#include <gtest/gtest.h>

#include "../support/gen.hpp"

using namespace fermat;
using namespace fermat::testing;

namespace {

FR mono(Rational c, Rational e) { return FR::monomial(std::move(c), e); }
FR t() { return FR::t(); }
FR real(long v) { return FR(Rational(v)); }

}  // namespace

TEST(Normalize, CancelsAndTruncates) {
  EXPECT_EQ(FR::normalize(0, {{Rational(1, 2), 1}, {Rational(1, 2), -1}, {Rational(1), 3}}), mono(3, 1));
  EXPECT_EQ(FR::normalize(0, {{Rational(1, 3), 2}, {Rational(7, 6), 5}}), mono(2, Rational(1, 3)));
  FR x = FR::normalize(1, {{Rational(1), 1}, {Rational(1, 2), 2}});
  ASSERT_EQ(x.terms().size(), 2u);
  EXPECT_EQ(x.terms()[0].exponent.value(), Rational(1, 2));
  EXPECT_EQ(x.terms()[1].coefficient, 1);
  EXPECT_EQ(to_text(x), "1 + 2*t^(1/2) + t^(1/1)");
}

TEST(Normalize, RejectsNegativeExponent) {
  EXPECT_THROW(FR::normalize(0, {{Rational(-1, 2), 1}}), Error);
}

TEST(Exponent, DomainIsHalfOpenUnitInterval) {
  EXPECT_THROW(Exponent(Rational(0)), Error);
  EXPECT_THROW(Exponent(Rational(3, 2)), Error);
  EXPECT_NO_THROW(Exponent(Rational(1)));
}

TEST(Arithmetic, Examples) {
  EXPECT_TRUE((t() + (-t())).is_zero());
  EXPECT_EQ(real(1) + mono(1, Rational(1, 2)) + mono(1, Rational(1, 2)), real(1) + mono(2, Rational(1, 2)));
  EXPECT_EQ((real(2) + t()).scale(3), real(6) + mono(3, 1));
  EXPECT_TRUE((t() * t()).is_zero());
  FR s = real(1) + mono(1, Rational(1, 2));
  EXPECT_EQ(s * s, real(1) + mono(2, Rational(1, 2)) + t());
  EXPECT_TRUE((mono(1, Rational(1, 2)) * mono(1, Rational(2, 3))).is_zero());
}

TEST(Arithmetic, Powers) {
  EXPECT_EQ(pow_nat(mono(1, Rational(1, 3)), 3), t());
  EXPECT_TRUE(pow_nat(mono(1, Rational(1, 2)), 3).is_zero());
  EXPECT_EQ(pow_nat(real(1) + t(), 2), real(1) + mono(2, 1));
  EXPECT_EQ(pow_nat(real(5) + t(), 0), real(1));
}

TEST(Order, Examples) {
  for (long r : {1, 7, 1000000}) {
    EXPECT_EQ(compare(t(), FR(Rational(1, r))), Ordering3::less);
    EXPECT_EQ(compare(-t(), FR(Rational(-1, r))), Ordering3::greater);
  }
  EXPECT_EQ(compare(mono(1, Rational(1, 2)), t()), Ordering3::greater);
  EXPECT_EQ(compare(real(1) + t(), real(1)), Ordering3::greater);
  EXPECT_EQ(compare(real(1), real(1)), Ordering3::equal);
  EXPECT_EQ(symbol(Ordering3::less), "<");
  EXPECT_TRUE(mono(-1, Rational(1, 3)) < mono(1, 1));
}

TEST(Order, OmegaAndNilpotency) {
  EXPECT_EQ(order_omega(mono(1, Rational(1, 2))), 2);
  EXPECT_EQ(order_omega(real(3) + t()), 1);
  EXPECT_EQ(order_omega(real(5)), 0);
  EXPECT_EQ(nilpotency_index(t()), 2u);
  EXPECT_EQ(nilpotency_index(real(4) + mono(1, Rational(1, 3))), 4u);
  EXPECT_EQ(nilpotency_index(real(7)), 1u);
  EXPECT_EQ(nilpotency_index(mono(1, Rational(2, 5))), 3u);
}

TEST(Order, NilpotencyMatchesDirectPowering) {
  for (int i = 0; i < 300; ++i) {
    FR x = random_fr(4, 12, 10, true);
    if (x.is_zero()) continue;
    std::uint64_t m = nilpotency_index(x);
    EXPECT_TRUE(pow_nat(x, m).is_zero()) << to_text(x);
    EXPECT_FALSE(pow_nat(x, m - 1).is_zero()) << to_text(x);
  }
}

TEST(Representative, Examples) {
  EXPECT_EQ(eval_representative(real(3) + mono(2, 1), Rational(1, 10)), Rational(16, 5));
  EXPECT_EQ(eval_representative(mono(1, Rational(1, 2)), Rational(1, 100)), Rational(1, 10));
  EXPECT_EQ(eval_representative(real(1) + mono(1, Rational(1, 3)), Rational(1, 1000000)), Rational(101, 100));
  try {
    eval_representative(mono(1, Rational(1, 2)), Rational(1, 2));
    FAIL() << "expected an exception";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::exact_backend_root_needed);
  }
  PrecisionScope scope(40);
  FermatReal<BigFloat> y = FermatReal<BigFloat>::monomial(BigFloat(1), Rational(1, 2));
  BigFloat v = eval_representative(y, BigFloat(Rational(1, 2)));
  EXPECT_LT(abs_value(BigFloat(v * v - BigFloat(0.5))), BigFloat(1e-35));
}

TEST(Properties, RingAxioms) {
  for (int i = 0; i < 1000; ++i) {
    FR x = random_fr(), y = random_fr(), z = random_fr();
    EXPECT_EQ((x + y) + z, x + (y + z));
    EXPECT_EQ(x + y, y + x);
    EXPECT_EQ((x * y) * z, x * (y * z));
    EXPECT_EQ(x * y, y * x);
    EXPECT_EQ(x * (y + z), x * y + x * z);
    EXPECT_EQ(x + FR(), x);
    EXPECT_EQ(x * FR(Rational(1)), x);
    EXPECT_TRUE((x - x).is_zero());
  }
}

TEST(Properties, MultiplicationIsTruncatedConvolution) {
  for (int i = 0; i < 1000; ++i) {
    FR x = random_fr(), y = random_fr();
    EXPECT_EQ(x * y, from_map(convolve(to_map(x), to_map(y))));
  }
}

TEST(Properties, TotalOrder) {
  for (int i = 0; i < 1000; ++i) {
    FR x = random_fr(), y = random_fr(), z = random_fr();
    if (coin()) y = x + random_fr(2, 12, 2, true);
    int expected = lex_compare(x, y);
    EXPECT_EQ(compare(x, y), expected < 0 ? Ordering3::less : (expected > 0 ? Ordering3::greater : Ordering3::equal));
    EXPECT_EQ(compare(x, y) == Ordering3::less, compare(y, x) == Ordering3::greater);
    EXPECT_EQ(compare(x, y) == Ordering3::equal, x == y);
    if (x <= y && y <= z) EXPECT_LE(x, z);
    if (x < y) {
      EXPECT_LT(x + z, y + z);
      Rational r = abs_value(nonzero_rational());
      EXPECT_LT(x.scale(r), y.scale(r));
      FR w = abs(z);
      EXPECT_LE(x * w, y * w);
    }
  }
}

TEST(Properties, InfinitesimalCharacterization) {
  for (int i = 0; i < 300; ++i) {
    FR x = random_fr();
    bool below_all = true;
    for (long d : {1, 10, 1000, 1000000}) below_all = below_all && abs(x) < FR(Rational(1, d));
    if (x.is_infinitesimal()) EXPECT_TRUE(below_all) << to_text(x);
    if (!x.is_infinitesimal()) EXPECT_FALSE(abs(x) < FR(abs_value(x.standard_part()) / 2));
  }
}

TEST(Properties, NonStrictProductWithInfinitesimal) {
  FR a = mono(1, Rational(1, 2)), b = mono(2, Rational(1, 2));
  EXPECT_LT(a, b);
  EXPECT_EQ(a * t(), b * t());
}

TEST(Format, Text) {
  EXPECT_EQ(to_text(FR()), "0");
  EXPECT_EQ(to_text(mono(-1, 1)), "-t^(1/1)");
  EXPECT_EQ(to_text(real(0) + mono(Rational(-3, 2), Rational(1, 2))), "-3/2*t^(1/2)");
  EXPECT_EQ(to_text(FR(Rational(3, 2)) + mono(2, Rational(1, 2)) - t()), "3/2 + 2*t^(1/2) - t^(1/1)");
}

TEST(Scalar, ParseRational) {
  EXPECT_EQ(parse_rational("3/6"), Rational(1, 2));
  EXPECT_EQ(parse_rational("-0.25"), Rational(-1, 4));
  EXPECT_EQ(parse_rational("1e-3"), Rational(1, 1000));
  EXPECT_EQ(parse_rational("2.5E2"), Rational(250));
  for (const char* bad : {"", "1/0", "abc", "1e99999", "1..2", "--1"}) EXPECT_THROW(parse_rational(bad), Error) << bad;
}

TEST(Scalar, ExactRoots) {
  EXPECT_EQ(exact_root(Rational(27, 8), 3), Rational(3, 2));
  EXPECT_EQ(exact_root(Rational(-8), 3), Rational(-2));
  EXPECT_FALSE(exact_root(Rational(2), 2).has_value());
  EXPECT_FALSE(exact_root(Rational(-4), 2).has_value());
}

TEST(Scalar, PrecisionScopeRestores) {
  unsigned before = BigFloat::default_precision();
  {
    PrecisionScope scope(120);
    EXPECT_EQ(BigFloat::default_precision(), 120u);
  }
  EXPECT_EQ(BigFloat::default_precision(), before);
}

TEST(Scalar, FloatBackendAgreesWithExact) {
  PrecisionScope scope(60);
  for (int i = 0; i < 200; ++i) {
    FR x = random_fr(), y = random_fr();
    auto lift = [](const FR& v) {
      std::vector<FermatReal<BigFloat>::RawTerm> raw;
      for (const auto& term : v.terms()) raw.push_back({term.exponent.value(), to_bigfloat(term.coefficient)});
      return FermatReal<BigFloat>::normalize(to_bigfloat(v.standard_part()), std::move(raw));
    };
    FermatReal<BigFloat> d = lift(x * y) - lift(x) * lift(y);
    BigFloat worst = abs_value(d.standard_part());
    for (const auto& term : d.terms()) worst = std::max(worst, abs_value(term.coefficient));
    EXPECT_LT(worst, BigFloat(1e-50));
    EXPECT_EQ(compare(lift(x), lift(y)), compare(x, y));
  }
}
