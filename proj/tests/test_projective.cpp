#include <gtest/gtest.h>

#include <sstream>

#include "oracles.hpp"
#include "znec/projective.hpp"

using namespace znec;

// Two primitive triples share a canonical form exactly when they differ by a
// unit, which the oracle decides by trying every unit.
TEST(Canonicalize, OrbitsMatchUnitScaling) {
  for (long n : {10L, 12L, 25L, 35L}) {
    const Modulus m(n);
    std::map<oracle::Triple, Triple> seen;
    for (long x = 0; x < n; ++x)
      for (long y = 0; y < n; ++y)
        for (long z = 0; z < n; ++z) {
          if (oracle::gcd(oracle::gcd(x, y), oracle::gcd(z, n)) != 1) continue;
          const Triple c = canonicalize(m, Triple{x, y, z});
          const oracle::Triple key = oracle::smallest_multiple({x, y, z}, n);
          auto [it, fresh] = seen.emplace(key, c);
          if (!fresh) EXPECT_EQ(it->second, c) << x << " " << y << " " << z << " mod " << n;
        }
    // Distinct orbits never collide.
    std::set<Triple> images;
    for (const auto& [k, v] : seen) images.insert(v);
    EXPECT_EQ(images.size(), seen.size());
  }
}

TEST(Canonicalize, IsIdempotentAndPrefersRightmostUnit) {
  const Modulus m = Modulus::prime_power(13, 2);
  EXPECT_EQ(canonicalize(m, Triple{0, 61 * 5, 5}), (Triple{0, 61, 1}));
  EXPECT_EQ(canonicalize(m, Triple{13 * 3, 3, 0}), (Triple{13, 1, 0}));
  const Triple t = canonicalize(m, Triple{7, 8, 9});
  EXPECT_EQ(canonicalize(m, t), t);
}

TEST(Canonicalize, RejectsNonPrimitive) {
  EXPECT_THROW(canonicalize(Modulus(35), Triple{5, 10, 0}), NotPrimitive);
  EXPECT_THROW(ProjectivePoint(Modulus(169), Triple{13, 26, 0}), NotPrimitive);
  EXPECT_THROW(ProjectivePoint(Modulus(7), Triple{0, 0, 0}), NotPrimitive);
}

TEST(ProjectivePoint, EqualityIsOrbitEquality) {
  const Modulus m(77);
  const ProjectivePoint a(m, Triple{3, 4, 1});
  const ProjectivePoint b(m, Triple{6, 8, 2});
  const ProjectivePoint c(m, Triple{3, 4, 2});
  EXPECT_TRUE(points_equal(a, b));
  EXPECT_EQ(a, b);
  EXPECT_FALSE(points_equal(a, c));
  EXPECT_EQ(canonicalize(a), a);
}

TEST(ProjectivePoint, ReductionAndPrinting) {
  const Modulus m(35);
  const ProjectivePoint p(m, Triple{12, 3, 1});
  const ProjectivePoint r = reduce(p, Modulus(7));
  EXPECT_EQ(r.coords(), (Triple{5, 3, 1}));
  EXPECT_THROW(reduce(p, Modulus(11)), ContractViolation);
  std::ostringstream os;
  os << p;
  EXPECT_EQ(os.str(), "(12 : 3 : 1)");
  EXPECT_TRUE(ProjectivePoint(m, Triple{0, 2, 0}).is_origin());
}

TEST(ProjectivePoint, MakePointFromResidues) {
  const Modulus m(13);
  EXPECT_EQ(make_point(m(2), m(4), m(2)).coords(), (Triple{1, 2, 1}));
  EXPECT_THROW(make_point(m(1), Modulus(11)(1), m(1)), ContractViolation);
}

TEST(Canonicalize, CompositeGluesComponents) {
  // Z = 5 vanishes mod 5 but is a unit mod 7.
  const Modulus m(35);
  const Triple t = canonicalize(m, Triple{1, 1, 5});
  const Triple mod5 = canonicalize(Modulus(5), Triple{1, 1, 5});
  const Triple mod7 = canonicalize(Modulus(7), Triple{1, 1, 5});
  for (int i = 0; i < 3; ++i) {
    EXPECT_EQ(mpz_class(t[i] % 5), mod5[i]);
    EXPECT_EQ(mpz_class(t[i] % 7), mod7[i]);
  }
}
