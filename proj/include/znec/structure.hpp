#pragma once

// Group structure of E(Z/NZ): counting over F_p, the anomalous dichotomy,
// the classification over Z/NZ, the explicit map Phi and a brute-force oracle.

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

#include "znec/budget.hpp"
#include "znec/curve.hpp"

namespace znec {

/// |E(F_p)| = 1 + sum_x (1 + (x^3 + Ax + B | p)). Requires a prime modulus
/// no larger than the budget (BudgetExceeded otherwise).
mpz_class count_points_fp(const Curve& c, std::uint64_t budget = Budgets{}.counting);

struct FieldCurveData {
  mpz_class p;
  mpz_class order;  // q = |E(F_p)|
  mpz_class trace;  // p + 1 - q
  mpz_class n1;     // E(F_p) = Z/n1 + Z/n2 with n2 | n1
  mpz_class n2;
};

/// Structure of E(F_p). n2 can only be nontrivial at primes l dividing both
/// q and p - 1 with l^2 | q; only those l-parts are examined, exhaustively
/// below 10^4 points and with 40 seeded random points above.
FieldCurveData group_structure_fp(const Curve& c, std::uint64_t budget = Budgets{}.counting);

/// |E(F_p)| == p.
bool is_anomalous(const Curve& c, std::uint64_t budget = Budgets{}.counting);

enum class AnomalousType { Cyclic, Split };

/// For E over Z/p^eZ (e >= 2) with anomalous reduction: lifts a nonzero
/// point of E(F_p) and checks whether p^{e-1} kills it.
AnomalousType anomalous_type(const Curve& c);

enum class LocalCase { NonAnomalous, AnomalousCyclic, AnomalousSplit };

std::string to_string(LocalCase c);

struct LocalStructure {
  mpz_class p;
  unsigned e = 1;
  LocalCase kind = LocalCase::NonAnomalous;
  mpz_class fp_order;
  std::vector<mpz_class> factors;  // cyclic orders (> 1) of E(Z/p^eZ), ascending
};

/// An invariant-factor decomposition d1 | d2 | ... | dk (factors > 1 only).
struct GroupStructure {
  mpz_class n;
  std::vector<mpz_class> factors;
  std::vector<LocalStructure> local;  // empty for oracle results

  mpz_class order() const;
  std::size_t rank() const { return factors.size(); }
  /// "Z/13 ⊕ Z/13"; the trivial group prints as "0".
  std::string str() const;
};

/// Merges arbitrary cyclic orders into the canonical invariant factors.
std::vector<mpz_class> invariant_factors(const std::vector<mpz_class>& cyclic_orders);

GroupStructure classify(const Curve& c, const Budgets& budgets = {});

struct PhiValue {
  CurvePoint projection;         // on the curve reduced mod p
  mpz_class infinity_part;       // in [0, p^{e-1})
  mpz_class infinity_modulus;    // p^{e-1}
};

/// P -> (pi(P), X / p mod p^{e-1}) where qP = (X : 1 : f(X)) and q = |E(F_p)|.
/// Requires a prime-power modulus with 1 <= e <= 5.
PhiValue phi_map(const Curve& c, const mpz_class& fp_order, const CurvePoint& p);

/// Structure from the enumerated point set alone: for every prime l with
/// l^2 | |E| the multiplication-by-l map is tabulated and |E[l^k]| counted.
GroupStructure brute_force_structure(const Curve& c, std::uint64_t budget = Budgets{}.oracle);

}  // namespace znec
