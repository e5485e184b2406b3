#include <gtest/gtest.h>

#include <random>

#include "localpt/exact.hpp"

using namespace localpt;

namespace {

const RatFunc T1 = RatFunc::t1();
const RatFunc T2 = RatFunc::t2();

Poly2 random_poly(std::mt19937_64& rng, int max_deg, int terms) {
  std::vector<Poly2::Term> ts;
  std::uniform_int_distribution<int> deg(0, max_deg);
  for (int k = 0; k < terms; ++k) {
    uint32_t a = deg(rng), b = deg(rng);
    if (a + b > uint32_t(max_deg)) continue;
    ts.push_back({a, b, random_rational(rng, 9)});
  }
  return Poly2::from_terms(ts);
}

RatFunc random_ratfunc(std::mt19937_64& rng) {
  Poly2 d;
  while (d.is_zero()) d = random_poly(rng, 3, 3);
  return RatFunc(random_poly(rng, 3, 4), d);
}

}  // namespace

TEST(Exact, InversePairCancels) {
  EXPECT_TRUE((T1 / T2 * (T2 / T1)).is_one());
}

TEST(Exact, CommonFactorCancels) {
  RatFunc f = (T1 * T1 - T2 * T2) / (T1 + T2);
  EXPECT_EQ(f, T1 - T2);
  EXPECT_TRUE(f.is_polynomial());
}

TEST(Exact, AdditiveInverse) {
  RatFunc a = RatFunc(1) / (T1 - T2);
  RatFunc b = RatFunc(1) / (T2 - T1);
  EXPECT_TRUE((a + b).is_zero());
}

TEST(Exact, DenominatorIsMonic) {
  RatFunc f = RatFunc(3) / (RatFunc(2) * T1 + T2);
  EXPECT_EQ(f.den().leading_coeff(), 1);
  EXPECT_EQ(f.den().terms().size(), 2u);
}

TEST(Exact, NonHomogeneousGcd) {
  Poly2 p = (Poly2::t1() + Poly2(1)) * (Poly2::t1() * Poly2::t2() - Poly2(3));
  Poly2 q = (Poly2::t1() + Poly2(1)) * (Poly2::t2() + Poly2(2));
  EXPECT_EQ(gcd(p, q), Poly2::t1() + Poly2(1));
  RatFunc f(p, q);
  EXPECT_EQ(f.num(), Poly2::t1() * Poly2::t2() - Poly2(3));
}

TEST(Exact, HomogeneousGcdWithMonomialParts) {
  Poly2 t1 = Poly2::t1(), t2 = Poly2::t2();
  Poly2 p = t1 * t1 * t2 * (t1 + t2) * (t1 - t2 * Poly2(2));
  Poly2 q = t1 * t2 * t2 * (t1 + t2) * (t1 + t2) * (t1 - t2);
  EXPECT_EQ(gcd(p, q), t1 * t2 * (t1 + t2));
}

TEST(Exact, DivisionByZeroThrows) {
  EXPECT_THROW(T1 / RatFunc(0), DivisionByZero);
}

TEST(Exact, SubstituteExamples) {
  Substitution s;
  s.has_t2 = true;
  s.t2 = -T1;
  EXPECT_TRUE(substitute(T1 + T2, s).is_zero());
  EXPECT_THROW(substitute(RatFunc(1) / (T1 + T2), s), SpecializationPole);
  Substitution n;
  n.has_t1 = n.has_t2 = true;
  n.t1 = RatFunc(5);
  n.t2 = RatFunc(7);
  EXPECT_EQ(substitute(T1 * T2, n), RatFunc(35));
}

TEST(Exact, FieldAxiomsOnRandomTriples) {
  std::mt19937_64 rng(11);
  for (int k = 0; k < 40; ++k) {
    RatFunc a = random_ratfunc(rng), b = random_ratfunc(rng), c = random_ratfunc(rng);
    EXPECT_EQ((a + b) + c, a + (b + c));
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_TRUE((a - a).is_zero());
    if (!b.is_zero()) EXPECT_EQ((a * b) / b, a);
  }
}

TEST(Exact, SubstitutionCommutesWithArithmetic) {
  std::mt19937_64 rng(12);
  Substitution s;
  s.has_t1 = s.has_t2 = true;
  s.t1 = RatFunc(BigRat(3, 7));
  s.t2 = RatFunc(BigRat(-5, 11));
  for (int k = 0; k < 30; ++k) {
    RatFunc a = random_ratfunc(rng), b = random_ratfunc(rng);
    try {
      RatFunc sa = substitute(a, s), sb = substitute(b, s);
      EXPECT_EQ(substitute(a + b, s), sa + sb);
      EXPECT_EQ(substitute(a * b, s), sa * sb);
    } catch (const SpecializationPole&) {
    }
  }
}

TEST(Exact, ProbePointAvoidsBadLoci) {
  for (uint64_t seed = 0; seed < 20; ++seed) {
    Weights w = Weights::probe(seed);
    ASSERT_TRUE(w.t1.is_constant());
    EXPECT_FALSE((w.t1 - w.t2).is_zero());
    EXPECT_FALSE((w.t1 + w.t2).is_zero());
    EXPECT_FALSE(w.t1.is_zero());
    EXPECT_FALSE(w.t2.is_zero());
  }
}
