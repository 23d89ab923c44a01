#include <gtest/gtest.h>

#include "helpers.hpp"
#include "oracles.hpp"

using namespace ultranorm;

TEST(Valuation, ZeroIsInfinite) { EXPECT_FALSE(valuation(Scalar(0), FieldConfig(7)).has_value()); }

TEST(Valuation, Examples) {
  EXPECT_EQ(valuation(Scalar(50), FieldConfig(5)), 2);
  EXPECT_EQ(valuation(Scalar::parse("3/20"), FieldConfig(2)), -2);
  EXPECT_EQ(valuation(Scalar::parse("3/20"), FieldConfig(2)), oracle::valuation_small(3, 20, 2));
  EXPECT_EQ(valuation(Scalar(-81), FieldConfig(3)), 4);
  EXPECT_EQ(valuation(Scalar(7), FieldConfig(2)), 0);
}

TEST(Valuation, AgreesWithDivisionOracleOnSmallRationals) {
  for (std::int64_t p : {2, 3, 5, 7})
    for (std::int64_t n = -200; n <= 200; ++n)
      for (std::int64_t d = 1; d <= 60; ++d) {
        Scalar x{BigInt(n), BigInt(d)};
        // The oracle needs lowest terms only for the count, which reduction does not change.
        EXPECT_EQ(valuation(x, FieldConfig(p)), oracle::valuation_small(n, d, p)) << n << "/" << d << " p=" << p;
      }
}

TEST(FieldConfig, RejectsNonPrime) {
  EXPECT_THROW(FieldConfig(4), Error);
  EXPECT_THROW(FieldConfig(1), Error);
  EXPECT_NO_THROW(FieldConfig(101));
}

TEST(Abs, Examples) {
  EXPECT_EQ(abs(Scalar(1), FieldConfig(2)), AbsValue::power(0));
  EXPECT_EQ(abs(Scalar(5), FieldConfig(5)), AbsValue::power(-1));
  EXPECT_EQ(abs(Scalar::parse("4/9"), FieldConfig(2)), AbsValue::power(-2));
  EXPECT_EQ(abs(Scalar(0), FieldConfig(2)), AbsValue::zero());
  EXPECT_EQ(abs(Scalar::parse("4/9"), FieldConfig(2)).to_string(), "g^-2");
  EXPECT_LT(AbsValue::zero(), AbsValue::power(-100));
}

TEST(UniformizerPower, Examples) {
  EXPECT_EQ(uniformizer_power(0, FieldConfig(2)), Scalar(1));
  EXPECT_EQ(uniformizer_power(2, FieldConfig(3)), Scalar(9));
  EXPECT_EQ(uniformizer_power(-1, FieldConfig(5)), Scalar::parse("1/5"));
  for (std::int64_t n = -10; n <= 10; ++n) {
    EXPECT_EQ(abs(uniformizer_power(n, FieldConfig(3)), FieldConfig(3)), AbsValue::power(-n));
  }
}

TEST(Scalar, ParseAndPrint) {
  EXPECT_EQ(Scalar::parse("6/4").to_string(), "3/2");
  EXPECT_EQ(Scalar::parse("-7").to_string(), "-7/1");
  EXPECT_EQ(Scalar::parse("-7").pretty(), "-7");
  EXPECT_EQ(Scalar::parse(" 2/-4 ").pretty(), "-1/2");
  EXPECT_THROW(Scalar::parse("1/0"), Error);
  EXPECT_THROW(Scalar::parse("x"), Error);
  EXPECT_THROW(Scalar::parse(""), Error);
}

TEST(Scalar, DivisionByZero) {
  try {
    (void)Scalar(0).inverse();
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DivisionByZero);
  }
  EXPECT_THROW(Scalar(3) / Scalar(0), Error);
}

class FieldProperties : public ::testing::TestWithParam<std::int64_t> {};

TEST_P(FieldProperties, ValuationIsAdditive) {
  FieldConfig f(GetParam());
  Rng rng(11);
  for (int i = 0; i < 1000; ++i) {
    Scalar x = random_scalar(rng, f, -8, 8), y = random_scalar(rng, f, -8, 8);
    EXPECT_EQ(*valuation(x * y, f), *valuation(x, f) + *valuation(y, f));
    EXPECT_EQ(valuation(x, f), oracle::valuation(x, f.p()));
  }
}

TEST_P(FieldProperties, StrongTriangleAndIsoceles) {
  FieldConfig f(GetParam());
  Rng rng(12);
  for (int i = 0; i < 1000; ++i) {
    Scalar x = random_scalar(rng, f, -4, 4), y = random_scalar(rng, f, -4, 4);
    if (coin(rng, 0.2)) y = -x + random_scalar(rng, f, 3, 6);  // force cancellation
    const AbsValue ax = abs(x, f), ay = abs(y, f), s = abs(x + y, f);
    EXPECT_LE(s, std::max(ax, ay));
    if (ax != ay) {
      EXPECT_EQ(s, std::max(ax, ay));
    }
    EXPECT_EQ(abs(x * y, f), ax * ay);
  }
}

TEST_P(FieldProperties, InverseNegatesExponent) {
  FieldConfig f(GetParam());
  Rng rng(13);
  for (int i = 0; i < 1000; ++i) {
    Scalar x = random_scalar(rng, f, -9, 9);
    EXPECT_EQ(abs(x.inverse(), f).exponent(), -abs(x, f).exponent());
    EXPECT_EQ(x * x.inverse(), Scalar(1));
  }
}

INSTANTIATE_TEST_SUITE_P(Primes, FieldProperties, ::testing::Values(2, 3, 5, 7));
