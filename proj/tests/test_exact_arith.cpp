#include <gtest/gtest.h>

#include "tornzeta/exact_arith.hpp"

using tornzeta::Rat;

namespace {

Rat direct_harmonic(int n, int order = 1) {
  Rat s(0);
  for (int k = 1; k <= n; ++k) s += tornzeta::pow(Rat(k), -order);
  return s;
}

bool reduced(const Rat& r) {
  mpz_class g;
  mpz_class n = abs(r.num());
  mpz_class d = r.den();
  mpz_gcd(g.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
  return d > 0 && g == 1;
}

}  // namespace

TEST(Rat, CanonicalForm) {
  const Rat r(6, -4);
  EXPECT_EQ(r.num(), -3);
  EXPECT_EQ(r.den(), 2);
  EXPECT_EQ(Rat(0, 7).den(), 1);
  EXPECT_EQ(Rat::parse("-10/4"), Rat(-5, 2));
  EXPECT_THROW(Rat(1, 0), std::domain_error);
  EXPECT_THROW(Rat(1) / Rat(0), std::domain_error);
}

TEST(Binomial, Examples) {
  EXPECT_EQ(tornzeta::binomial(0, 0), Rat(1));
  EXPECT_EQ(tornzeta::binomial(4, 2), Rat(6));
  EXPECT_EQ(tornzeta::binomial(5, 6), Rat(0));
}

TEST(Binomial, RowSumsArePowersOfTwo) {
  for (int n = 0; n <= 30; ++n) {
    Rat sum(0);
    for (int k = 0; k <= n; ++k) sum += tornzeta::binomial(n, k);
    EXPECT_EQ(sum, Rat(1L << n)) << n;
  }
}

TEST(Bernoulli, KnownValues) {
  EXPECT_EQ(tornzeta::bernoulli(0), Rat(1));
  EXPECT_EQ(tornzeta::bernoulli(1), Rat(-1, 2));
  EXPECT_EQ(tornzeta::bernoulli(2), Rat(1, 6));
  EXPECT_EQ(tornzeta::bernoulli(4), Rat(-1, 30));
  EXPECT_EQ(tornzeta::bernoulli(6), Rat(1, 42));
  EXPECT_EQ(tornzeta::bernoulli(7), Rat(0));
  EXPECT_EQ(tornzeta::bernoulli(12), Rat(-691, 2730));
  EXPECT_THROW(tornzeta::bernoulli(-1), std::domain_error);
}

TEST(Bernoulli, OddIndicesVanish) {
  for (int n = 1; n <= 15; ++n) EXPECT_TRUE(tornzeta::bernoulli(2 * n + 1).is_zero()) << n;
}

TEST(Bernoulli, SatisfiesDefiningRecurrence) {
  for (int m = 1; m <= 40; ++m) {
    Rat acc(0);
    for (int j = 0; j <= m; ++j) acc += tornzeta::binomial(m + 1, j) * tornzeta::bernoulli(j);
    EXPECT_TRUE(acc.is_zero()) << m;
  }
}

TEST(Harmonic, Examples) {
  EXPECT_EQ(tornzeta::harmonic(0), Rat(0));
  EXPECT_EQ(tornzeta::harmonic(3), Rat(11, 6));
  EXPECT_EQ(direct_harmonic(5), Rat(137, 60));
  EXPECT_EQ(tornzeta::harmonic(5), direct_harmonic(5));
}

TEST(Harmonic, GeneralizedExamples) {
  EXPECT_EQ(tornzeta::harmonic_gen(2, 2), Rat(5, 4));
  EXPECT_EQ(direct_harmonic(3, 2), Rat(49, 36));
  EXPECT_EQ(tornzeta::harmonic_gen(3, 2), direct_harmonic(3, 2));
  EXPECT_EQ(tornzeta::harmonic_gen(0, 5), Rat(0));
  EXPECT_EQ(tornzeta::harmonic_gen(4, 0), Rat(4));
  EXPECT_EQ(tornzeta::harmonic_gen(4, -1), Rat(10));
  for (int n = 0; n <= 40; ++n) EXPECT_EQ(tornzeta::harmonic_gen(n, 1), tornzeta::harmonic(n));
  for (int n = 0; n <= 12; ++n) EXPECT_EQ(tornzeta::harmonic_gen(n, 3), direct_harmonic(n, 3));
}

TEST(Harmonic, OddExamples) {
  EXPECT_EQ(tornzeta::odd_harmonic(0), Rat(0));
  EXPECT_EQ(tornzeta::odd_harmonic(1), Rat(1));
  EXPECT_EQ(tornzeta::odd_harmonic(2), Rat(4, 3));
  Rat direct(0);
  for (int k = 1; k <= 3; ++k) direct += Rat(1, 2 * k - 1);
  EXPECT_EQ(direct, Rat(23, 15));
  EXPECT_EQ(tornzeta::odd_harmonic(3), direct);
}

TEST(Harmonic, Invariants) {
  for (int n = 1; n <= 200; ++n) {
    const Rat h = tornzeta::harmonic(n);
    const Rat o = tornzeta::odd_harmonic(n);
    EXPECT_EQ(h - tornzeta::harmonic(n - 1), Rat(1, n));
    EXPECT_EQ(o - tornzeta::odd_harmonic(n - 1), Rat(1, 2 * n - 1));
    EXPECT_EQ(tornzeta::harmonic(2 * n), o + Rat(1, 2) * h);
    EXPECT_TRUE(reduced(h));
    EXPECT_TRUE(reduced(o));
    EXPECT_TRUE(reduced(tornzeta::harmonic_gen(n, 2)));
  }
}

TEST(HarmonicTable, GrowsIncrementally) {
  tornzeta::HarmonicTable t;
  EXPECT_EQ(t.h(10), direct_harmonic(10));
  EXPECT_EQ(t.size(), 10);
  EXPECT_EQ(t.h(4), direct_harmonic(4));
  EXPECT_EQ(t.size(), 10);
  EXPECT_THROW(t.h(-1), std::domain_error);
}
