#pragma once

// The rank bound for p-groups E(Z/NZ): H_p, chi_p, the bound H_p + chi_p + 1
// and a CRT construction of curves meeting it.

#include <gmpxx.h>

#include <optional>
#include <vector>

#include "znec/budget.hpp"
#include "znec/structure.hpp"

namespace znec {

/// All primes q with (q - p - 1)^2 <= 4p, ascending.
std::vector<mpz_class> hasse_primes(const mpz_class& p);

/// The first (A, B) mod q in lexicographic order, skipping singular pairs,
/// with |E_{A,B}(F_q)| = order. Throws NoCurveOfOrder when none exists and
/// BudgetExceeded when q is too large to count.
std::pair<mpz_class, mpz_class> find_curve_of_order(const mpz_class& q, const mpz_class& order,
                                                    std::uint64_t budget = Budgets{}.search);

struct ChiWitness {
  mpz_class q;
  mpz_class a;
  mpz_class b;
};

struct ChiResult {
  int value = 0;                     // 0 or 2
  bool decided = true;               // false: search budget ran out, value assumes 2
  std::optional<mpz_class> candidate;  // the prime among p^2 - p + 1, p^2 + p + 1
  std::optional<ChiWitness> witness;   // lexicographically smallest (A, B)
};

/// chi_p: 2 when some E_{A,B}(F_q) is F_p + F_p, with q the prime one of
/// p^2 +- p + 1. The search over (A, B) mod q costs about q point evaluations
/// per pair and stops at `budget` evaluations.
ChiResult chi_p(const mpz_class& p, std::uint64_t budget = Budgets{}.search);

struct RankBoundReport {
  mpz_class p;
  std::vector<mpz_class> hasse_primes;
  std::size_t h_p = 0;
  ChiResult chi;
  std::size_t bound = 0;  // h_p + chi + 1
};

/// Requires p >= 5 prime.
RankBoundReport rank_bound(const mpz_class& p, std::uint64_t budget = Budgets{}.search);

struct MaxRankCurve {
  mpz_class p;
  mpz_class a;
  mpz_class b;
  mpz_class n;
  Factorization factors;
  GroupStructure structure;
  std::size_t bound = 0;
  bool attains_bound = false;
  std::vector<mpz_class> skipped;  // Hasse primes 2 and 3, unusable since gcd(6, N) = 1
};

/// Glues one curve of order p over every usable Hasse prime q != p, an
/// anomalous split curve mod p^2 and the chi witness (if any) by CRT, then
/// classifies the result. When a Hasse prime is 2 or 3 the bound cannot be
/// met and the best curve found is returned with attains_bound = false.
MaxRankCurve construct_max_rank_curve(const mpz_class& p, std::uint64_t budget = Budgets{}.search);

}  // namespace znec
