#include <gtest/gtest.h>

#include <random>

#include "dicehit/decimal.hpp"
#include "dicehit/errors.hpp"

namespace dicehit {
namespace {

TEST(RenderDecimal, FixedNotation) {
  EXPECT_EQ(render_decimal(mpq_class(2, 9), 10), "0.2222222222");
  EXPECT_EQ(render_decimal(mpq_class(1, 2), 3), "0.500");
  EXPECT_EQ(render_decimal(mpq_class(17, 13), 10), "1.307692308");
  EXPECT_EQ(render_decimal(mpq_class(12345), 3), "12300");
  EXPECT_EQ(render_decimal(mpq_class(-1, 3), 4), "-0.3333");
  EXPECT_EQ(render_decimal(mpq_class(1, 10000), 2), "0.00010");
}

TEST(RenderDecimal, ScientificBelowThreshold) {
  EXPECT_EQ(render_decimal(mpq_class(1, 100000), 3), "1.00e-5");
  mpq_class tail(mpz_class("29020152044089394"), mpz_class("1" + std::string(35, '0')));
  tail.canonicalize();
  EXPECT_EQ(render_decimal(tail, 14),
            "2.9020152044089e-19");
  EXPECT_EQ(render_decimal(mpq_class(7, 1000000), 1), "7e-6");
}

TEST(RenderDecimal, Zero) {
  EXPECT_EQ(render_decimal(mpq_class(0), 4), "0.000");
  EXPECT_EQ(render_decimal(mpq_class(0), 1), "0");
}

TEST(RenderDecimal, HalfEven) {
  EXPECT_EQ(render_decimal(mpq_class(1, 8), 2), "0.12");
  EXPECT_EQ(render_decimal(mpq_class(3, 8), 2), "0.38");
  EXPECT_EQ(render_decimal(mpq_class(25, 10), 1), "2");
  EXPECT_EQ(render_decimal(mpq_class(35, 10), 1), "4");
  EXPECT_EQ(render_decimal(mpq_class(2501, 1000), 1), "3");
}

TEST(RenderDecimal, CarryIntoNextDecade) {
  EXPECT_EQ(render_decimal(mpq_class(9999, 1000), 3), "10.0");
  // Rounds up to 1.0e-4, which is back in fixed range.
  EXPECT_EQ(render_decimal(mpq_class(99999, 1000000000), 2), "0.00010");
  EXPECT_EQ(render_decimal(mpq_class(99999, 10000000000), 2), "1.0e-5");
}

TEST(RenderDecimal, RejectsZeroDigits) {
  EXPECT_THROW(render_decimal(mpq_class(1), 0), InvalidArgument);
}

TEST(RenderSqrt, Irrational) {
  EXPECT_EQ(render_sqrt_decimal(mpq_class(2), 1, 10), "1.414213562");
  EXPECT_EQ(render_sqrt_decimal(mpq_class(2), -1, 4), "-1.414");
  EXPECT_EQ(render_sqrt_decimal(mpq_class(1, 2), 1, 5), "0.70711");
  EXPECT_EQ(render_sqrt_decimal(mpq_class(1, 1000000000), 1, 3), "3.16e-5");
  EXPECT_EQ(render_sqrt_decimal(mpq_class(200), 1, 4), "14.14");
}

TEST(RenderSqrt, ExactTiesRoundHalfEven) {
  EXPECT_EQ(render_sqrt_decimal(mpq_class(25, 4), 1, 1), "2");    // 2.5
  EXPECT_EQ(render_sqrt_decimal(mpq_class(9, 4), 1, 1), "2");     // 1.5
  EXPECT_EQ(render_sqrt_decimal(mpq_class(49, 4), 1, 1), "4");    // 3.5
  EXPECT_EQ(render_sqrt_decimal(mpq_class(1, 4), 1, 3), "0.500");
}

TEST(RenderSqrt, PerfectSquaresMatchPlainRendering) {
  std::mt19937_64 gen(1);
  std::uniform_int_distribution<long> num(1, 100000);
  for (int i = 0; i < 500; ++i) {
    mpq_class r(num(gen), num(gen));
    r.canonicalize();
    for (unsigned d : {1u, 5u, 17u}) {
      EXPECT_EQ(render_sqrt_decimal(r * r, 1, d), render_decimal(r, d));
    }
  }
}

TEST(ParseRational, Forms) {
  EXPECT_EQ(parse_rational("1/2"), mpq_class(1, 2));
  EXPECT_EQ(parse_rational("4/8"), mpq_class(1, 2));
  EXPECT_EQ(parse_rational("0.5"), mpq_class(1, 2));
  EXPECT_EQ(parse_rational("1e-7"), mpq_class(1, 10000000));
  EXPECT_EQ(parse_rational("2.5E+3"), mpq_class(2500));
  EXPECT_EQ(parse_rational("-3"), mpq_class(-3));
  EXPECT_EQ(parse_rational(".25"), mpq_class(1, 4));
  // Leading zeros are decimal, not octal.
  EXPECT_EQ(parse_rational("0.010"), mpq_class(1, 100));
  EXPECT_EQ(parse_rational("0.0009"), mpq_class(9, 10000));
  EXPECT_EQ(parse_rational("010/08"), mpq_class(5, 4));
}

TEST(ParseRational, Rejects) {
  for (const char* bad : {"", "abc", "1/0", "1e", "1.2.3", "1x", "e5", "1/2/3"}) {
    EXPECT_THROW(parse_rational(bad), InvalidArgument) << bad;
  }
}

TEST(ParseRational, RoundTripsRenderings) {
  std::mt19937_64 gen(3);
  std::uniform_int_distribution<long> num(1, 1000000);
  for (int i = 0; i < 300; ++i) {
    mpq_class x(num(gen), num(gen) * 1000);
    x.canonicalize();
    const std::string s = render_decimal(x, 25);
    EXPECT_EQ(render_decimal(parse_rational(s), 25), s);
    EXPECT_LE(abs(parse_rational(s) - x) / x, mpq_class(1, mpz_class("1" + std::string(24, '0'))));
  }
}

TEST(CommonDigits, Examples) {
  EXPECT_EQ(common_significant_digits("2.4284979", "2.4284981"), 6u);
  EXPECT_EQ(common_significant_digits("0.00123", "0.00124"), 2u);
  EXPECT_EQ(common_significant_digits("1.5e-5", "1.5e-6"), 0u);
  EXPECT_EQ(common_significant_digits("1.25e-5", "1.26e-5"), 2u);
  EXPECT_EQ(common_significant_digits("3.14", "3.14"), 3u);
}

}  // namespace
}  // namespace dicehit
