#include <gtest/gtest.h>

#include <limits>

#include "cva/random.hpp"
#include "cva/rational.hpp"

using cva::Rational;

TEST(Rational, CanonicalForm) {
  EXPECT_EQ(Rational(6, -4), Rational(-3, 2));
  EXPECT_EQ(Rational(0, 5), Rational(0));
  EXPECT_EQ(Rational(6, -4).str(), "-3/2");
  EXPECT_EQ(Rational(4, 2).str(), "2");
  EXPECT_TRUE(Rational(4, 2).is_integer());
}

TEST(Rational, ParseRoundTrip) {
  for (const char* s : {"0", "-1", "7/3", "-5/108", "123456789012345678901234567891/2"}) {
    EXPECT_EQ(Rational::parse(s).str(), s);
  }
  EXPECT_EQ(Rational::parse("10/4"), Rational(5, 2));
  EXPECT_THROW(Rational::parse("1/0"), std::invalid_argument);
  EXPECT_THROW(Rational::parse("x"), std::invalid_argument);
}

TEST(Rational, OverflowPromotesAndDemotes) {
  const Rational big(std::numeric_limits<std::int64_t>::max());
  const Rational sq = big * big;
  EXPECT_FALSE(sq.is_small());
  EXPECT_EQ(sq / big, big);
  EXPECT_TRUE((sq / big).is_small());
  EXPECT_EQ(-Rational(std::numeric_limits<std::int64_t>::min()) - Rational(1), big);
}

// Oracle: GMP arithmetic on the same operands.
TEST(Rational, AgreesWithGmp) {
  cva::SampleRng rng(11);
  for (int t = 0; t < 2000; ++t) {
    const std::int64_t a = static_cast<std::int64_t>(rng.next() >> (rng.uniform(1, 62)));
    const std::int64_t b = static_cast<std::int64_t>(rng.next() >> (rng.uniform(1, 62))) + 1;
    const std::int64_t c = static_cast<std::int64_t>(rng.next() >> (rng.uniform(1, 62))) * (t % 2 ? -1 : 1);
    const std::int64_t d = static_cast<std::int64_t>(rng.next() >> (rng.uniform(1, 62))) + 1;
    const Rational x(a, b), y(c, d);
    mpq_class qx(a, b), qy(c, d);
    qx.canonicalize();
    qy.canonicalize();
    EXPECT_EQ((x + y).to_mpq(), mpq_class(qx + qy));
    EXPECT_EQ((x - y).to_mpq(), mpq_class(qx - qy));
    EXPECT_EQ((x * y).to_mpq(), mpq_class(qx * qy));
    if (c != 0) {
      EXPECT_EQ((x / y).to_mpq(), mpq_class(qx / qy));
    }
    EXPECT_EQ(x < y, qx < qy);
  }
}
