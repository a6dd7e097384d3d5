#pragma once

// The points at infinity of E(Z/p^eZ): the kernel of reduction mod p.

#include <optional>
#include <vector>

#include "znec/curve.hpp"

namespace znec {

/// The polynomial f of degree < e with E^inf = {(X : 1 : f(X)) : p | X}.
class InfinityPolynomial {
 public:
  /// Requires a prime-power modulus.
  explicit InfinityPolynomial(const Curve& curve);

  const Curve& curve() const { return curve_; }
  /// Low degree first; exactly e entries (some may be zero).
  const std::vector<Residue>& coefficients() const { return coeffs_; }
  Residue operator()(const Residue& x) const;

 private:
  Curve curve_;
  std::vector<Residue> coeffs_;
};

/// Substitutes z -> x^3 + Axz^2 + Bz^3 into itself, dropping monomials of
/// total degree >= e (they vanish when p | x and p | z), until no term in z
/// survives; the pure-x remainder is f.
InfinityPolynomial compute_f(const Curve& curve);

/// (X : 1 : f(X)). Throws ContractViolation unless p | X.
CurvePoint infinity_point(const InfinityPolynomial& f, const Residue& x);

/// (p : 1 : f(p)), generator of the kernel of reduction; order p^{e-1}.
CurvePoint kernel_generator(const InfinityPolynomial& f);

/// X when the point is (X : 1 : Z) with p | X and p | Z, i.e. lies over O.
std::optional<Residue> infinity_coordinate(const CurvePoint& p);

struct InfinitySum {
  Residue x3;
  /// min(5 * min(vp(X1), vp(X2)), e): the precision of X3 = X1 + X2.
  unsigned precision = 0;
  /// vp(X3 - X1 - X2)
  unsigned difference_valuation = 0;

  bool holds() const { return difference_valuation >= precision; }
};

/// Adds (X1 : 1 : f(X1)) and (X2 : 1 : f(X2)) with the full group law and
/// reports how closely X3 matches X1 + X2. Throws std::logic_error if the
/// sum leaves E^inf, which cannot happen for valid input.
InfinitySum infinity_sum_check(const InfinityPolynomial& f, const Residue& x1, const Residue& x2);

}  // namespace znec
