#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <vector>

#include "znec/budget.hpp"
#include "znec/modring.hpp"
#include "znec/projective.hpp"

namespace znec {

class Curve;

/// A point known to satisfy the equation of the curve that produced it.
/// Only Curve hands these out.
class CurvePoint {
 public:
  const ProjectivePoint& point() const { return point_; }
  const Triple& coords() const { return point_.coords(); }
  const Modulus& modulus() const { return point_.modulus(); }
  bool is_zero() const { return point_.is_origin(); }
  std::string str() const { return point_.str(); }

  friend bool operator==(const CurvePoint&, const CurvePoint&) = default;

 private:
  friend class Curve;
  explicit CurvePoint(ProjectivePoint p) : point_(std::move(p)) {}

  ProjectivePoint point_;
};

/// The short Weierstrass curve Y^2 Z = X^3 + A X Z^2 + B Z^3 over Z/NZ, with
/// gcd(6, N) = 1 and unit discriminant -(4A^3 + 27B^2).
class Curve {
 public:
  /// Throws BadCharacteristic when gcd(6, N) > 1 and SingularCurve (with the
  /// gcd of the discriminant and N) when the discriminant is not a unit.
  Curve(const Modulus& modulus, const mpz_class& a, const mpz_class& b);

  const Modulus& modulus() const { return modulus_; }
  const Residue& a() const { return a_; }
  const Residue& b() const { return b_; }
  const Residue& discriminant() const { return discriminant_; }

  bool contains(const ProjectivePoint& p) const;

  /// Throws NotOnCurve (or NotPrimitive) for bad input.
  CurvePoint point(const ProjectivePoint& p) const;
  CurvePoint point(const mpz_class& x, const mpz_class& y, const mpz_class& z) const;
  CurvePoint zero() const;

  /// Sum via the two complete bidegree-(2,2) addition laws: the
  /// (0:0:1)-law result when it is primitive, otherwise a primitive
  /// combination of both results.
  CurvePoint add(const CurvePoint& p, const CurvePoint& q) const;
  CurvePoint negate(const CurvePoint& p) const;
  /// k * p by left-to-right double-and-add; negative k goes through negate.
  CurvePoint multiply(const mpz_class& k, const CurvePoint& p) const;

  /// The same A, B over Z/MZ for a divisor M of N.
  Curve reduce(const Modulus& target) const;
  /// Projection of a point of this curve onto reduce(target).
  CurvePoint project(const CurvePoint& p, const Curve& target) const;

  friend bool operator==(const Curve& l, const Curve& r) {
    return l.modulus_ == r.modulus_ && l.a_ == r.a_ && l.b_ == r.b_;
  }

 private:
  friend std::vector<CurvePoint> enumerate_points(const Curve&, std::uint64_t);
  CurvePoint trusted(Triple canonical) const;

  Modulus modulus_;
  Residue a_;
  Residue b_;
  Residue discriminant_;
};

/// Convenience: factorizes n and builds the curve.
Curve make_curve(const mpz_class& a, const mpz_class& b, const mpz_class& n);

/// Both law outputs for a pair of points, reduced mod N (S first, then T).
std::array<Triple, 2> addition_law_outputs(const Curve& c, const Triple& p, const Triple& q);

/// Every point of E(Z/NZ) once, sorted by canonical coordinates. Component
/// points are found per prime power (affine through a square-root table,
/// infinity through the fixed point Z = X^3 + AXZ^2 + BZ^3) and glued by CRT.
/// Throws BudgetExceeded when the point count or a component modulus exceeds
/// the budget.
std::vector<CurvePoint> enumerate_points(const Curve& c,
                                         std::uint64_t budget = Budgets{}.enumeration);

/// Number of calls to Curve::add on this thread since the counter was made.
class AdditionCounter {
 public:
  AdditionCounter();
  std::uint64_t count() const;

 private:
  std::uint64_t start_;
};

}  // namespace znec
