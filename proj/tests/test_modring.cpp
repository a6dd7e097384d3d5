#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "znec/modring.hpp"

using namespace znec;

TEST(Primality, AgreesWithTrialDivisionBelow20000) {
  for (long n = 0; n < 20000; ++n) EXPECT_EQ(is_prime(n), oracle::is_prime(n)) << n;
}

TEST(Primality, KnownLargeValues) {
  EXPECT_TRUE(is_prime(mpz_class("730750818665451459112596905638433048232067471723")));
  EXPECT_TRUE(is_prime(mpz_class("18446744073709551557")));  // largest prime below 2^64
  EXPECT_FALSE(is_prime(mpz_class("3215031751")));           // strong pseudoprime to 2, 3, 5, 7
  EXPECT_FALSE(is_prime(mpz_class("3317044064679887385961981")));
}

TEST(Factorize, ProductOfFactorsRoundTrips) {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 300; ++i) {
    const mpz_class n = mpz_class(static_cast<unsigned long>(rng() >> 20)) + 2;
    mpz_class prod = 1;
    mpz_class last = 0;
    for (const auto& f : factorize(n)) {
      EXPECT_TRUE(oracle::is_prime(f.prime.get_si()) || is_prime(f.prime));
      EXPECT_GT(f.prime, last);
      last = f.prime;
      prod *= f.value();
    }
    EXPECT_EQ(prod, n);
  }
}

TEST(Factorize, SemiprimeNeedsRho) {
  const mpz_class p("1000000007"), q("998244353");
  const Factorization f = factorize(p * q);
  ASSERT_EQ(f.size(), 2u);
  EXPECT_EQ(f[0].prime, q);
  EXPECT_EQ(f[1].prime, p);
}

TEST(Factorize, PaperModuli) {
  EXPECT_EQ(factorize(187187), (Factorization{{7, 1}, {11, 2}, {13, 1}, {17, 1}}));
  EXPECT_EQ(factorize(659902243), (Factorization{{7, 1}, {11, 1}, {13, 2}, {17, 1}, {19, 1}, {157, 1}}));
}

TEST(Residue, InverseMatchesExtendedEuclid) {
  const Modulus m(169);
  const Residue i = m(61).inverse();
  EXPECT_EQ(i.value(), *oracle::inverse(61, 169));
  EXPECT_EQ((m(61) * i).value(), 1);
}

TEST(Residue, NonInvertibleCarriesGcd) {
  const Modulus m(169);
  try {
    m(26).inverse();
    FAIL() << "26 is not a unit mod 169";
  } catch (const NonInvertible& e) {
    EXPECT_EQ(e.gcd(), 13);
  }
}

TEST(Residue, ArithmeticStaysReduced) {
  const Modulus m(35);
  for (long a = -40; a < 40; a += 3) {
    for (long b = -40; b < 40; b += 7) {
      EXPECT_EQ((m(a) + m(b)).value(), oracle::mod(a + b, 35));
      EXPECT_EQ((m(a) - m(b)).value(), oracle::mod(a - b, 35));
      EXPECT_EQ((m(a) * m(b)).value(), oracle::mod(a * b, 35));
    }
  }
  EXPECT_EQ(m(3).pow(100).value(), oracle::powmod(3, 100, 35));
}

TEST(Residue, MixingModuliIsAContractViolation) {
  EXPECT_THROW(Modulus(35)(1) + Modulus(37)(1), ContractViolation);
}

TEST(Modulus, RejectsBadInput) {
  EXPECT_THROW(Modulus(mpz_class(1)), ContractViolation);
  EXPECT_THROW(Modulus(Factorization{{15, 1}}), ContractViolation);
  EXPECT_THROW(Modulus(Factorization{{7, 1}, {5, 1}}), ContractViolation);
}

TEST(Modulus, IdempotentsSplitUnity) {
  const Modulus m(5 * 49 * 11);
  mpz_class sum = 0;
  for (std::size_t i = 0; i < m.components().size(); ++i) {
    const mpz_class& e = m.idempotents()[i];
    sum += e;
    for (std::size_t j = 0; j < m.components().size(); ++j) {
      const mpz_class r = e % m.components()[j];
      EXPECT_EQ(r, i == j ? 1 : 0);
    }
  }
  EXPECT_EQ(m.reduce(sum), 1);
  EXPECT_EQ(m.radical(), 5 * 7 * 11);
}

TEST(Crt, CombinesAgainstBruteForce) {
  const Modulus m5(5), m7(7), m9(11);
  for (long a = 0; a < 5; ++a)
    for (long b = 0; b < 7; ++b)
      for (long c = 0; c < 11; ++c) {
        const std::vector<Residue> parts{m5(a), m7(b), m9(c)};
        const Residue r = crt_combine(parts);
        EXPECT_EQ(r.modulus().value(), 385);
        long brute = 0;
        while (brute % 5 != a || brute % 7 != b || brute % 11 != c) ++brute;
        EXPECT_EQ(r.value(), brute);
      }
}

TEST(Crt, RejectsSharedFactors) {
  const std::vector<Residue> parts{Modulus(15)(1), Modulus(35)(2)};
  EXPECT_THROW(crt_combine(parts), NotCoprime);
}

TEST(Valuation, PowersOfP) {
  const Modulus m = Modulus::prime_power(5, 4);
  EXPECT_EQ(vp(m(0), 5), 4u);
  EXPECT_EQ(vp(m(1), 5), 0u);
  EXPECT_EQ(vp(m(50), 5), 2u);
  EXPECT_EQ(vp(m(125), 5), 3u);
}

TEST(Primitive, MatchesGcdDefinition) {
  const Modulus m(6);
  const std::vector<Residue> t{m(2), m(3)};
  EXPECT_TRUE(is_primitive(t));
  for (long n : {6L, 35L, 169L}) {
    const Modulus mn(n);
    for (long a = 0; a < n; a += 2)
      for (long b = 0; b < n; b += 3) {
        const std::vector<Residue> v{mn(a), mn(b), mn(0)};
        EXPECT_EQ(is_primitive(v), oracle::gcd(oracle::gcd(a, b), n) == 1);
      }
  }
}

TEST(SqrtModPrime, AgreesWithSquaring) {
  for (long p : {5L, 7L, 13L, 17L, 41L, 97L, 113L}) {
    for (long a = 0; a < p; ++a) {
      const auto r = sqrt_mod_prime(a, p);
      EXPECT_EQ(r.has_value(), oracle::legendre(a, p) >= 0) << a << " mod " << p;
      if (r) EXPECT_EQ(oracle::mod(r->get_si() * r->get_si(), p), a);
      EXPECT_EQ(legendre(a, p), oracle::legendre(a, p));
    }
  }
}

TEST(StrongRank, Examples) {
  EXPECT_EQ(strong_rank(Matrix(Modulus(5), {{1, 0}, {0, 1}})), 2u);
  EXPECT_EQ(strong_rank(Matrix(Modulus(5), {{1, 2}, {2, 4}})), 1u);
  EXPECT_EQ(strong_rank(Matrix(Modulus(6), {{2, 0}, {0, 3}})), 1u);
}

TEST(StrongRank, ExhaustiveTwoByTwoUpToTen) {
  for (long n = 2; n <= 10; ++n) {
    const Modulus m(n);
    for (long v = 0; v < n * n * n * n; ++v) {
      const std::vector<std::vector<long>> rows{{v % n, v / n % n}, {v / (n * n) % n, v / (n * n * n)}};
      EXPECT_EQ(strong_rank(Matrix(m, rows)), oracle::strong_rank(rows, n));
    }
  }
}

TEST(StrongRank, RandomLargerShapes) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 3000; ++trial) {
    const long n = 2 + static_cast<long>(rng() % 9);
    const std::size_t r = 1 + rng() % 3, c = 1 + rng() % 3;
    std::vector<std::vector<long>> rows(r, std::vector<long>(c));
    for (auto& row : rows)
      for (auto& x : row) x = static_cast<long>(rng() % n);
    EXPECT_EQ(strong_rank(Matrix(Modulus(n), rows)), oracle::strong_rank(rows, n));
  }
}

TEST(MinorIdeals, ConventionsAtTheEdges) {
  const Matrix m(Modulus(7), {{1, 2}, {3, 4}});
  ASSERT_EQ(minor_ideal_generators(m, 0).size(), 1u);
  EXPECT_EQ(minor_ideal_generators(m, 0)[0].value(), 1);
  EXPECT_EQ(minor_ideal_generators(m, 1).size(), 4u);
  ASSERT_EQ(minor_ideal_generators(m, 2).size(), 1u);
  EXPECT_EQ(minor_ideal_generators(m, 2)[0].value(), oracle::mod(4 - 6, 7));
  ASSERT_EQ(minor_ideal_generators(m, 3).size(), 1u);
  EXPECT_TRUE(minor_ideal_generators(m, 3)[0].is_zero());
  const MinorIdealProfile prof = minor_ideal_profile(m);
  EXPECT_EQ(prof.generators.size(), 3u);
}

TEST(PrimitiveCombination, ProducesPrimitiveColumns) {
  std::mt19937_64 rng(4);
  int tried = 0;
  for (long n : {35L, 143L, 5L * 7 * 11 * 13, 169L * 5}) {
    const Modulus m(n);
    while (tried < 400) {
      std::vector<std::vector<long>> rows(3, std::vector<long>(2));
      for (auto& row : rows)
        for (auto& x : row) x = static_cast<long>(rng() % n);
      long g = n;
      for (auto& row : rows)
        for (long x : row) g = oracle::gcd(g, x);
      if (g != 1) continue;
      const Matrix mat(m, rows);
      const auto beta = primitive_combination(mat);
      ASSERT_EQ(beta.size(), 2u);
      std::vector<Residue> combo;
      for (std::size_t r = 0; r < 3; ++r) combo.push_back(beta[0] * m(rows[r][0]) + beta[1] * m(rows[r][1]));
      EXPECT_TRUE(is_primitive(combo));
      if (++tried % 100 == 0) break;
    }
  }
}

TEST(PrimitiveCombination, NeedsBothColumnsAcrossPrimes) {
  // Column 1 vanishes mod 5, column 2 vanishes mod 7.
  const Modulus m(35);
  const Matrix mat(m, {{5, 7}, {10, 14}, {0, 0}});
  const auto beta = primitive_combination(mat);
  std::vector<Residue> combo;
  for (std::size_t r = 0; r < 3; ++r) combo.push_back(beta[0] * m(mat.at(r, 0)) + beta[1] * m(mat.at(r, 1)));
  EXPECT_TRUE(is_primitive(combo));
  EXPECT_THROW(primitive_combination(Matrix(m, {{5, 5}, {0, 0}})), NotPrimitive);
}
