#include "znec/dlp.hpp"

#include <vector>

#include "znec/infinity.hpp"
#include "znec/structure.hpp"

namespace znec {

namespace {

mpz_class power(const mpz_class& base, unsigned long e) {
  mpz_class r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

// Newton iteration x <- x - g(x)/g'(x) mod q until it stops moving.
template <typename G, typename DG>
mpz_class newton(mpz_class x, const mpz_class& q, G&& g, DG&& dg) {
  for (int it = 0; it < 64; ++it) {
    mpz_class d = dg(x) % q;
    mpz_class inv;
    if (mpz_invert(inv.get_mpz_t(), d.get_mpz_t(), q.get_mpz_t()) == 0) {
      throw std::logic_error("Newton step hit a non-unit derivative");
    }
    mpz_class next = (x - g(x) * inv) % q;
    if (next < 0) next += q;
    if (next == x) return x;
    x = std::move(next);
  }
  throw std::logic_error("Newton iteration did not converge");
}

}  // namespace

CurvePoint lift_point(const Curve& lifted, const CurvePoint& base) {
  const Modulus& m = lifted.modulus();
  if (!m.is_prime_power()) throw ContractViolation("lifting target must be Z/p^eZ");
  const mpz_class& p = m.prime();
  ZNEC_EXPECTS(base.modulus().value() == p, "base point must live over F_p");
  const Curve reduced = lifted.reduce(base.modulus());
  if (!reduced.contains(base.point())) throw NotOnCurve(base.str() + " is not on the reduced curve");
  if (base.is_zero()) return lifted.zero();

  const mpz_class& q = m.value();
  const mpz_class& A = lifted.a().value();
  const mpz_class& B = lifted.b().value();
  const auto& [x0, y0, z0] = base.coords();
  ZNEC_EXPECTS(z0 == 1, "nonzero points over F_p are affine");
  if (y0 != 0) {
    const mpz_class rhs = m.reduce(x0 * x0 * x0 + A * x0 + B);
    const mpz_class y = newton(
        y0, q, [&](const mpz_class& y) { return mpz_class(y * y - rhs); },
        [](const mpz_class& y) { return mpz_class(2 * y); });
    return lifted.point(x0, y, 1);
  }
  // 2-torsion: 2Y vanishes mod p, but 3X^2 + A cannot (nonsingular reduction).
  const mpz_class x = newton(
      x0, q, [&](const mpz_class& x) { return mpz_class(x * x * x + A * x + B); },
      [&](const mpz_class& x) { return mpz_class(3 * x * x + A); });
  return lifted.point(x, 0, 1);
}

Residue theta(const Curve& c, const CurvePoint& pt) {
  const Modulus& m = c.modulus();
  if (!m.is_prime_power() || m.exponent() < 2) {
    throw ContractViolation("theta needs a curve over Z/p^eZ with e >= 2");
  }
  const mpz_class& p = m.prime();
  const unsigned e = m.exponent();
  const mpz_class scale = power(p, e - 1);
  const CurvePoint torsion = c.multiply(scale, pt);
  auto x = infinity_coordinate(torsion);
  if (!x || vp(*x, p) < e - 1) {
    throw NotCyclic("p^(e-1) * P = " + torsion.str() + " is not a p-torsion point at infinity");
  }
  return Modulus::prime_power(p, 1)(x->value() / scale);
}

DlpInstance::DlpInstance(Curve curve, CurvePoint base, CurvePoint target)
    : curve_(std::move(curve)), base_(std::move(base)), target_(std::move(target)) {
  const Modulus& m = curve_.modulus();
  if (!m.is_prime_power() || m.exponent() != 1) {
    throw ContractViolation("discrete logarithms are solved over a prime field");
  }
  if (!curve_.contains(base_.point()) || !curve_.contains(target_.point())) {
    throw NotOnCurve("instance points must lie on the curve");
  }
  if (base_.is_zero()) throw ThetaZero("base point is O, so Theta(P) = 0");
  ZNEC_EXPECTS(!target_.is_zero(), "target point must be nonzero");
}

DlpSolution solve_anomalous_dlp(const DlpInstance& inst) {
  AdditionCounter counter;
  const Curve& curve = inst.curve();
  const mpz_class& p = curve.modulus().prime();
  const Budgets budgets;

  // For p >= 7 a nonzero point with p * P = O forces |E(F_p)| = p by Hasse;
  // small p are simply counted.
  const bool anomalous = p <= budgets.counting ? is_anomalous(curve)
                                               : curve.multiply(p, inst.base()).is_zero();
  if (!anomalous) throw NotAnomalous("E(F_" + p.get_str() + ") does not have p points");

  const Modulus lifted_mod = Modulus::prime_power(p, 2);
  const mpz_class& a = curve.a().value();
  const mpz_class& b = curve.b().value();

  std::vector<std::pair<unsigned long, unsigned long>> shifts{{0, 0}, {0, 1}, {1, 0}};
  DlpSolution sol;
  auto attempt = [&](const mpz_class& i, const mpz_class& j) -> bool {
    ++sol.lift_attempts;
    const Curve lifted(lifted_mod, a + i * p, b + j * p);
    const Residue tp = theta(lifted, lift_point(lifted, inst.base()));
    if (tp.is_zero()) return false;  // split lift: Theta vanishes identically
    const Residue tq = theta(lifted, lift_point(lifted, inst.target()));
    sol.theta_base = tp.value();
    sol.theta_target = tq.value();
    sol.log = (tq * tp.inverse()).value();
    sol.lift_a = lifted.a().value();
    sol.lift_b = lifted.b().value();
    return true;
  };

  bool found = false;
  for (const auto& [i, j] : shifts) {
    if ((found = attempt(i, j))) break;
  }
  for (mpz_class i = 0; !found && i < p; ++i) {
    for (mpz_class j = 0; !found && j < p; ++j) {
      if ((i == 0 && j <= 1) || (i == 1 && j == 0)) continue;
      found = attempt(i, j);
    }
  }
  if (!found) throw LiftRetryExhausted("every lift to Z/p^2Z was split");

  if (!(curve.multiply(sol.log, inst.base()) == inst.target())) {
    throw std::logic_error("Theta quotient failed verification N * P == Q");
  }
  sol.additions = counter.count();
  return sol;
}

}  // namespace znec
