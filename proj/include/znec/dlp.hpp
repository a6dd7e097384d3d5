#pragma once

// Discrete logarithms on anomalous curves over F_p: lift the points to a
// cyclic curve over Z/p^2Z and read the logarithm off the map Theta.

#include <gmpxx.h>

#include <cstdint>

#include "znec/curve.hpp"

namespace znec {

/// Lifts a point of E(F_p) to the curve `lifted` over Z/p^eZ (same A, B mod
/// p). Affine points keep X and Newton-iterate Y; when Y = 0 mod p, Y stays
/// and X is iterated instead. O lifts to O. Throws NotOnCurve when the base
/// point is not on the reduction of `lifted`.
CurvePoint lift_point(const Curve& lifted, const CurvePoint& base);

/// Theta(P) = X / p^{e-1} mod p where p^{e-1} P = (X : 1 : f(X)).
/// The curve must be over Z/p^eZ with e >= 2 and cyclic of order p^e; on a
/// split curve every value is 0. Throws NotCyclic when p^{e-1} P is not of the
/// form (X : 1 : Z) with p^{e-1} | X.
Residue theta(const Curve& c, const CurvePoint& p);

/// Base point P and target Q on an anomalous curve over a prime field.
class DlpInstance {
 public:
  /// Throws ThetaZero when P = O; Q must be a nonzero point of the curve.
  DlpInstance(Curve curve, CurvePoint base, CurvePoint target);

  const Curve& curve() const { return curve_; }
  const CurvePoint& base() const { return base_; }
  const CurvePoint& target() const { return target_; }

 private:
  Curve curve_;
  CurvePoint base_;
  CurvePoint target_;
};

struct DlpSolution {
  mpz_class log;            // N with N * P = Q, in [0, p)
  mpz_class theta_base;     // Theta(P lifted)
  mpz_class theta_target;   // Theta(Q lifted)
  mpz_class lift_a;         // coefficients of the cyclic lift over Z/p^2Z
  mpz_class lift_b;
  unsigned lift_attempts = 0;
  std::uint64_t additions = 0;  // curve additions spent, verification included
};

/// Solves Q = N * P. Lifts run over Z/p^2Z starting from (A, B); if that
/// lift is split, (A, B + p) and then (A + p, B) are tried, followed by the
/// remaining (A + ip, B + jp). The answer is checked (N * P == Q) before it is
/// returned. Throws NotAnomalous and LiftRetryExhausted.
DlpSolution solve_anomalous_dlp(const DlpInstance& instance);

}  // namespace znec
