#include "znec/rank.hpp"

#include <algorithm>
#include <map>

#include "znec/dlp.hpp"

namespace znec {

namespace {

using u64 = std::uint64_t;

u64 mulmod(u64 a, u64 b, u64 m) {
  return static_cast<u64>(static_cast<unsigned __int128>(a) * b % m);
}

// |E_{A,B}(F_q)| for many (A, B) over one small prime field.
class FieldCounter {
 public:
  explicit FieldCounter(u64 q) : q_(q), square_(q, 0), cubes_(q) {
    for (u64 y = 0; y <= q / 2; ++y) square_[mulmod(y, y, q)] = 1;
    for (u64 x = 0; x < q; ++x) cubes_[x] = mulmod(mulmod(x, x, q), x, q);
  }

  bool singular(u64 a, u64 b) const {
    const u64 d = (4 * mulmod(mulmod(a, a, q_), a, q_) + 27 * mulmod(b, b, q_)) % q_;
    return d == 0;
  }

  u64 count(u64 a, u64 b) const {
    u64 n = 1;
    u64 ax = 0;
    for (u64 x = 0; x < q_; ++x) {
      u64 rhs = cubes_[x] + ax + b;
      rhs %= q_;
      n += rhs == 0 ? 1 : 2 * square_[rhs];
      ax += a;
      if (ax >= q_) ax -= q_;
    }
    return n;
  }

 private:
  u64 q_;
  std::vector<unsigned char> square_;
  std::vector<u64> cubes_;
};

u64 small_prime(const mpz_class& q) {
  const Budgets limits;
  if (!q.fits_ulong_p() || q > limits.counting) {
    throw BudgetExceeded("prime " + q.get_str() + " is beyond the counting budget");
  }
  return q.get_ui();
}

void require_prime_at_least_5(const mpz_class& p) {
  if (p < 5 || !is_prime(p)) throw ContractViolation("p must be a prime >= 5");
}

// Each (A, B) costs about q point evaluations.
class SearchBudget {
 public:
  explicit SearchBudget(u64 limit) : limit_(limit) {}
  bool spend(u64 amount) {
    used_ += amount;
    return used_ <= limit_;
  }

 private:
  u64 limit_;
  u64 used_ = 0;
};

// First (A, B) mod p, lexicographically over Z/p^2Z coefficient classes,
// whose reduction is anomalous and whose group mod p^2 is split.
std::pair<mpz_class, mpz_class> split_anomalous_curve(const mpz_class& p, SearchBudget& budget) {
  const u64 ps = small_prime(p);
  const FieldCounter counter(ps);
  const Modulus base_mod = Modulus::prime_power(p, 1);
  const Modulus square_mod = Modulus::prime_power(p, 2);
  for (u64 a = 0; a < ps; ++a) {
    for (u64 b = 0; b < ps; ++b) {
      if (!budget.spend(ps)) throw BudgetExceeded("split anomalous search ran out of budget");
      if (counter.singular(a, b) || counter.count(a, b) != ps) continue;
      for (u64 i = 0; i < ps; ++i) {
        for (u64 j = 0; j < ps; ++j) {
          const Curve c(square_mod, mpz_class(a) + p * i, mpz_class(b) + p * j);
          if (anomalous_type(c) == AnomalousType::Split) return {c.a().value(), c.b().value()};
        }
      }
    }
  }
  throw NoCurveOfOrder("no anomalous split curve modulo " + p.get_str() + "^2");
}

}  // namespace

std::vector<mpz_class> hasse_primes(const mpz_class& p) {
  ZNEC_EXPECTS(is_prime(p), "hasse_primes needs a prime");
  const mpz_class r = sqrt(4 * p);  // floor
  std::vector<mpz_class> out;
  for (mpz_class q = std::max(mpz_class(2), mpz_class(p + 1 - r - 1)); q <= p + 1 + r + 1; ++q) {
    const mpz_class t = q - p - 1;
    if (t * t <= 4 * p && is_prime(q)) out.push_back(q);
  }
  return out;
}

std::pair<mpz_class, mpz_class> find_curve_of_order(const mpz_class& q, const mpz_class& order,
                                                    std::uint64_t budget) {
  require_prime_at_least_5(q);
  const mpz_class t = order - q - 1;
  ZNEC_EXPECTS(t * t <= 4 * q, "order lies outside the Hasse interval of q");
  const u64 qs = small_prime(q);
  const u64 want = order.get_ui();
  const FieldCounter counter(qs);
  SearchBudget spent(budget);
  for (u64 a = 0; a < qs; ++a) {
    for (u64 b = 0; b < qs; ++b) {
      if (counter.singular(a, b)) continue;
      if (!spent.spend(qs)) throw BudgetExceeded("curve search over F_" + q.get_str() + " ran out of budget");
      if (counter.count(a, b) == want) return {mpz_class(a), mpz_class(b)};
    }
  }
  throw NoCurveOfOrder("no curve over F_" + q.get_str() + " has " + order.get_str() + " points");
}

ChiResult chi_p(const mpz_class& p, std::uint64_t budget) {
  require_prime_at_least_5(p);
  ChiResult r;
  for (const mpz_class& q : {mpz_class(p * p - p + 1), mpz_class(p * p + p + 1)}) {
    if (is_prime(q)) r.candidate = q;
  }
  if (!r.candidate) return r;

  const mpz_class& q = *r.candidate;
  const Budgets limits;
  if (!q.fits_ulong_p() || q > limits.counting) {
    r.value = 2;
    r.decided = false;
    return r;
  }
  const u64 qs = q.get_ui();
  const u64 want = mpz_class(p * p).get_ui();
  const FieldCounter counter(qs);
  const Modulus field = Modulus::prime_power(q, 1);
  SearchBudget spent(budget);
  for (u64 a = 0; a < qs; ++a) {
    for (u64 b = 0; b < qs; ++b) {
      if (counter.singular(a, b)) continue;
      if (!spent.spend(qs)) {
        r.value = 2;
        r.decided = false;
        return r;
      }
      if (counter.count(a, b) != want) continue;
      const FieldCurveData d = group_structure_fp(Curve(field, a, b));
      if (d.n1 == p && d.n2 == p) {
        r.value = 2;
        r.witness = ChiWitness{q, a, b};
        return r;
      }
    }
  }
  return r;
}

RankBoundReport rank_bound(const mpz_class& p, std::uint64_t budget) {
  require_prime_at_least_5(p);
  RankBoundReport r;
  r.p = p;
  r.hasse_primes = hasse_primes(p);
  r.h_p = r.hasse_primes.size();
  r.chi = chi_p(p, budget);
  r.bound = r.h_p + static_cast<std::size_t>(r.chi.value) + 1;
  return r;
}

MaxRankCurve construct_max_rank_curve(const mpz_class& p, std::uint64_t budget) {
  const RankBoundReport report = rank_bound(p, budget);
  if (!report.chi.decided) throw BudgetExceeded("chi_p is undecided within the search budget");

  std::map<mpz_class, std::pair<unsigned, std::pair<mpz_class, mpz_class>>> parts;
  MaxRankCurve out;
  out.p = p;
  out.bound = report.bound;
  for (const auto& q : report.hasse_primes) {
    if (q < 5) {
      out.skipped.push_back(q);
    } else if (q != p) {
      parts[q] = {1, find_curve_of_order(q, p, budget)};
    }
  }
  SearchBudget spent(budget);
  parts[p] = {2, split_anomalous_curve(p, spent)};
  if (report.chi.witness) {
    const auto& w = *report.chi.witness;
    parts[w.q] = {1, {w.a, w.b}};
  }

  std::vector<mpz_class> as;
  std::vector<mpz_class> bs;
  for (const auto& [q, part] : parts) {
    out.factors.push_back({q, part.first});
    as.push_back(part.second.first);
    bs.push_back(part.second.second);
  }
  const Modulus n(out.factors);
  out.n = n.value();
  out.a = n.glue(as);
  out.b = n.glue(bs);
  out.structure = classify(Curve(n, out.a, out.b));
  out.attains_bound = out.structure.rank() == out.bound;
  return out;
}

}  // namespace znec
