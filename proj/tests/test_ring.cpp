#include <gtest/gtest.h>

#include "weightkit/ring.hpp"
#include "weightkit/sampling.hpp"

using namespace weightkit;

namespace {

std::vector<RingSpec> all_kinds() {
  return {RingSpec::integers(), RingSpec::rationals(), RingSpec::prime_field(7),
          RingSpec::poly_over_prime_field(2), RingSpec::poly_over_rationals()};
}

}  // namespace

TEST(RingSpec, PrimalityIsChecked) {
  EXPECT_NO_THROW(RingSpec::prime_field(2));
  EXPECT_NO_THROW(RingSpec::prime_field(101));
  EXPECT_THROW(RingSpec::prime_field(1), Error);
  EXPECT_THROW(RingSpec::prime_field(91), Error);
  EXPECT_THROW(RingSpec::poly_over_prime_field(4), Error);
}

TEST(RingSpec, ParseAndPrint) {
  for (const auto& spec : all_kinds()) EXPECT_EQ(RingSpec::parse(spec.to_string()), spec);
  EXPECT_EQ(RingSpec::parse("GF(5)").characteristic(), 5u);
  EXPECT_THROW(RingSpec::parse("Z[x,y]"), Error);
  EXPECT_THROW(RingSpec::parse("GF(6)"), Error);
}

TEST(RingElement, CanonicalStrings) {
  auto z = RingSpec::integers();
  EXPECT_EQ(z.parse_element("-12").to_string(), "-12");
  auto q = RingSpec::rationals();
  EXPECT_EQ(q.parse_element("4/6").to_string(), "2/3");
  EXPECT_EQ(q.parse_element("-3/-6").to_string(), "1/2");
  auto f = RingSpec::prime_field(5);
  EXPECT_EQ(f.parse_element("-1").to_string(), "4");
  auto px = RingSpec::poly_over_rationals();
  EXPECT_EQ(px.parse_element("1 + 2*x + -1/2*x^3").to_string(), "1 + 2*x + -1/2*x^3");
  EXPECT_EQ(px.parse_element("x^2 - x").to_string(), "-1*x + 1*x^2");
  EXPECT_EQ(px.parse_element("0").to_string(), "0");
  auto f2x = RingSpec::poly_over_prime_field(2);
  EXPECT_EQ(f2x.parse_element("3 + 2*x + x^2").to_string(), "1 + 1*x^2");
  EXPECT_THROW(z.parse_element("1/2"), Error);
  EXPECT_THROW(px.parse_element("x*2"), Error);
  EXPECT_THROW(f2x.parse_element(""), Error);
}

TEST(RingElement, StringRoundTrip) {
  Rng rng(7);
  for (const auto& spec : all_kinds())
    for (int i = 0; i < 200; ++i) {
      RingElement a = random_element(spec, rng, 5);
      EXPECT_EQ(spec.parse_element(a.to_string()), a) << a.to_string();
    }
}

TEST(RingElement, UnitNormalization) {
  auto z = RingSpec::integers();
  EXPECT_EQ(z.from_int(-6).normalized(), z.from_int(6));
  EXPECT_TRUE(z.from_int(-1).is_unit());
  EXPECT_FALSE(z.from_int(2).is_unit());
  auto q = RingSpec::rationals();
  EXPECT_TRUE(q.parse_element("-2/3").normalized().is_one());
  auto px = RingSpec::poly_over_rationals();
  EXPECT_EQ(px.parse_element("2 + 4*x").normalized().to_string(), "1/2 + 1*x");
  auto f3x = RingSpec::poly_over_prime_field(3);
  EXPECT_EQ(f3x.parse_element("2*x + 2*x^2").normalized().to_string(), "1*x + 1*x^2");
}

TEST(RingElement, EuclideanDivisionProperty) {
  Rng rng(11);
  for (const auto& spec : all_kinds())
    for (int i = 0; i < 300; ++i) {
      RingElement a = random_element(spec, rng, 6);
      RingElement b = random_element(spec, rng, 4);
      if (b.is_zero()) continue;
      auto [q, r] = divmod(a, b);
      EXPECT_EQ(q * b + r, a);
      EXPECT_TRUE(r.is_zero() || r.euclid_norm() < b.euclid_norm());
    }
}

TEST(RingElement, ExtendedGcd) {
  Rng rng(3);
  for (const auto& spec : all_kinds())
    for (int i = 0; i < 300; ++i) {
      RingElement a = random_element(spec, rng, 6);
      RingElement b = random_element(spec, rng, 6);
      auto e = extended_gcd(a, b);
      EXPECT_EQ(e.s * a + e.t * b, e.g);
      EXPECT_EQ(e.g, gcd(a, b));
      EXPECT_TRUE(divides(e.g, a));
      EXPECT_TRUE(divides(e.g, b));
      EXPECT_EQ(e.g.normalized(), e.g);
    }
  auto z = RingSpec::integers();
  EXPECT_EQ(gcd(z.from_int(12), z.from_int(-18)), z.from_int(6));
  EXPECT_TRUE(gcd(z.zero(), z.zero()).is_zero());
}

TEST(RingElement, FieldInverses) {
  auto f = RingSpec::prime_field(13);
  for (long v = 1; v < 13; ++v) EXPECT_TRUE((f.from_int(v) * f.from_int(v).inverse()).is_one());
  EXPECT_THROW(f.zero().inverse(), Error);
  EXPECT_THROW(RingSpec::integers().from_int(2).inverse(), Error);
}

TEST(RingElement, PolynomialArithmetic) {
  auto f2x = RingSpec::poly_over_prime_field(2);
  RingElement x = f2x.variable();
  RingElement one = f2x.one();
  EXPECT_EQ((x + one) * (x + one), x * x + one);  // Frobenius in characteristic 2
  EXPECT_EQ(x.pow(3).degree(), 3);
  auto [q, r] = divmod(x.pow(3) + one, x + one);
  EXPECT_TRUE(r.is_zero());
  EXPECT_EQ(q, x * x + x + one);
}
