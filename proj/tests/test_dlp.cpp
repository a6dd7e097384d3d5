#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "znec/dlp.hpp"
#include "znec/infinity.hpp"
#include "znec/structure.hpp"

using namespace znec;

namespace {

const mpz_class kP("730750818665451459112596905638433048232067471723");
const mpz_class kA("425706413842211054102700238164133538302169176474");
const mpz_class kB("203362936548826936673264444982866339953265530166");
const mpz_class kPy("310536468939899693718962354338996655381367569020");
const mpz_class kQy("38292783053156441019740319553956376819943854515");

Curve big_curve() { return Curve(Modulus(Factorization{{kP, 1}}), kA, kB); }

mpz_class inverse_mod(const mpz_class& a, const mpz_class& m) {
  mpz_class r;
  mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

}  // namespace

TEST(LiftPoint, OriginAndRoundTrip) {
  const Curve base = make_curve(2, 4, 5);
  const Curve lifted(Modulus::prime_power(5, 3), 2, 4);
  EXPECT_TRUE(lift_point(lifted, base.zero()).is_zero());
  for (const auto& pt : enumerate_points(base)) {
    const CurvePoint up = lift_point(lifted, pt);
    EXPECT_TRUE(lifted.contains(up.point()));
    EXPECT_EQ(lifted.project(up, base), pt);
  }
}

TEST(LiftPoint, TwoTorsionLiftsOnX) {
  // x^3 + x + 3 has the root 1 mod 5 (1 + 1 + 3 = 5), so (1 : 0 : 1) is 2-torsion.
  const Curve base = make_curve(1, 3, 5);
  const CurvePoint t = base.point(1, 0, 1);
  const Curve lifted(Modulus::prime_power(5, 4), 1, 3);
  const CurvePoint up = lift_point(lifted, t);
  EXPECT_EQ(up.coords()[1], 0);
  EXPECT_EQ(up.coords()[2], 1);
  EXPECT_TRUE(lifted.contains(up.point()));
  EXPECT_EQ(lifted.project(up, base), t);
}

TEST(LiftPoint, RejectsPointsOfOtherCurves) {
  const Curve other = make_curve(2, 4, 5);
  const Curve lifted(Modulus::prime_power(5, 2), 1, 3);
  const CurvePoint pt = enumerate_points(other)[1];
  if (!lifted.reduce(Modulus(5)).contains(pt.point())) EXPECT_THROW(lift_point(lifted, pt), NotOnCurve);
}

// One Newton step from P_y: Y' = P_y + alpha p, alpha = (1 + A + B - P_y^2) / (2 p P_y).
TEST(LiftPoint, MatchesClosedFormOnTheLargeCurve) {
  const Curve c = big_curve();
  const mpz_class p2 = kP * kP;
  const Curve lifted(Modulus(Factorization{{kP, 2}}), kA, kB);
  const CurvePoint up = lift_point(lifted, c.point(1, kPy, 1));
  const mpz_class numerator = 1 + kA + kB - kPy * kPy;
  ASSERT_TRUE(mpz_divisible_p(numerator.get_mpz_t(), kP.get_mpz_t()));
  mpz_class alpha = (numerator / kP) * inverse_mod(2 * kPy, kP) % kP;
  if (alpha < 0) alpha += kP;
  EXPECT_EQ(up.coords()[1], (kPy + alpha * kP) % p2);
  EXPECT_EQ(up.coords()[0], 1);
}

TEST(Theta, HomomorphismWithKernelOfReduction) {
  const Curve c = make_curve(7, 3, 169);
  const auto pts = enumerate_points(c);
  const CurvePoint k = kernel_generator(InfinityPolynomial(c));
  EXPECT_TRUE(theta(c, k).is_zero());
  std::map<Triple, mpz_class> th;
  for (const auto& pt : pts) th[pt.coords()] = theta(c, pt).value();
  for (const auto& x : pts)
    for (const auto& y : pts) EXPECT_EQ(th[c.add(x, y).coords()], (th[x.coords()] + th[y.coords()]) % 13);
  std::size_t zeros = 0;
  for (const auto& pt : pts) {
    if (th[pt.coords()] != 0) continue;
    ++zeros;
    EXPECT_TRUE(infinity_coordinate(pt).has_value()) << pt.str();
  }
  EXPECT_EQ(zeros, 13u);
}

// Two lifts of the same point differ by a kernel element, so Theta agrees.
TEST(Theta, IndependentOfTheLift) {
  const Curve c = make_curve(7, 3, 13 * 13 * 13);
  const Curve base = c.reduce(Modulus(13));
  std::map<Triple, std::set<mpz_class>> by_projection;
  for (const auto& pt : enumerate_points(c)) by_projection[c.project(pt, base).coords()].insert(theta(c, pt).value());
  EXPECT_EQ(by_projection.size(), 13u);
  for (const auto& [k, v] : by_projection) EXPECT_EQ(v.size(), 1u);
}

TEST(Theta, SplitCurvesAndContracts) {
  const Curve split = make_curve(1, 6, 169);
  for (const auto& pt : enumerate_points(split)) EXPECT_TRUE(theta(split, pt).is_zero());
  const Curve ordinary = make_curve(1, 1, 49);
  EXPECT_THROW(theta(ordinary, enumerate_points(ordinary)[2]), NotCyclic);
  EXPECT_THROW(theta(make_curve(7, 3, 13), make_curve(7, 3, 13).zero()), ContractViolation);
}

TEST(Dlp, PaperInstance) {
  const Curve c = big_curve();
  const DlpSolution s = solve_anomalous_dlp(DlpInstance(c, c.point(1, kPy, 1), c.point(3, kQy, 1)));
  EXPECT_EQ(s.theta_base, mpz_class("343088892565802863386490109374548044078624360215"));
  EXPECT_EQ(s.theta_target, mpz_class("470974712001084540433398653921983741661987449793"));
  EXPECT_EQ(s.log, mpz_class("113690975836469390483838646646828917131453128585"));
  EXPECT_EQ(s.lift_attempts, 1u);
  EXPECT_LT(s.additions, 2000u);
}

TEST(Dlp, RoundTripOnTheLargeCurve) {
  const Curve c = big_curve();
  const CurvePoint P = c.point(1, kPy, 1);
  std::mt19937_64 rng(31);
  gmp_randclass r(gmp_randinit_default);
  r.seed(rng());
  for (int i = 0; i < 3; ++i) {
    const mpz_class k = r.get_z_range(kP - 1) + 1;
    EXPECT_EQ(solve_anomalous_dlp(DlpInstance(c, P, c.multiply(k, P))).log, k);
  }
  EXPECT_EQ(solve_anomalous_dlp(DlpInstance(c, P, P)).log, 1);
}

TEST(Dlp, PreconditionErrors) {
  const Curve c = make_curve(7, 3, 13);
  const CurvePoint P = c.point(0, 4, 1);  // 4^2 = 16 = 3 mod 13
  EXPECT_THROW(DlpInstance(c, c.zero(), P), ThetaZero);
  EXPECT_THROW(DlpInstance(c, P, c.zero()), ContractViolation);
  const Curve ordinary = make_curve(1, 1, 13);
  const auto pts = enumerate_points(ordinary);
  EXPECT_THROW(solve_anomalous_dlp(DlpInstance(ordinary, pts[1], pts[2])), NotAnomalous);
  EXPECT_THROW(DlpInstance(make_curve(7, 3, 169), make_curve(7, 3, 169).point(0, 61, 1),
                           make_curve(7, 3, 169).point(0, 61, 1)),
               ContractViolation);
}

// When E_{A,B}(Z/p^2Z) itself is split, the solver moves on to another lift.
TEST(Dlp, SplitNaturalLiftIsRetried) {
  int exercised = 0;
  for (long p : {5L, 7L, 11L}) {
    for (long a = 0; a < p; ++a)
      for (long b = 0; b < p; ++b) {
        if ((4 * a * a * a + 27 * b * b) % p == 0 || oracle::count_points(a, b, p) != p) continue;
        if (anomalous_type(make_curve(a, b, p * p)) != AnomalousType::Split) continue;
        const Curve c = make_curve(a, b, p);
        const auto pts = enumerate_points(c);
        for (long k = 1; k < p; ++k) {
          const DlpSolution s = solve_anomalous_dlp(DlpInstance(c, pts[1], c.multiply(k, pts[1])));
          EXPECT_EQ(s.log, k);
          EXPECT_GE(s.lift_attempts, 2u);
          EXPECT_EQ(anomalous_type(make_curve(s.lift_a, s.lift_b, p * p)), AnomalousType::Cyclic);
        }
        ++exercised;
      }
  }
  EXPECT_GT(exercised, 0);
}
