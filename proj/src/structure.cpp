#include "znec/structure.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <unordered_map>

#include "znec/dlp.hpp"
#include "znec/infinity.hpp"

namespace znec {

namespace {

using u64 = std::uint64_t;

u64 mulmod(u64 a, u64 b, u64 m) {
  return static_cast<u64>(static_cast<unsigned __int128>(a) * b % m);
}

const mpz_class& require_prime_field(const Curve& c) {
  const Modulus& m = c.modulus();
  if (!m.is_prime_power() || m.exponent() != 1) {
    throw ContractViolation("curve must be defined over a prime field");
  }
  return m.prime();
}

mpz_class power(const mpz_class& base, unsigned long e) {
  mpz_class r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

// Random nonzero points of E(F_p), seeded from the curve for reproducibility.
std::vector<CurvePoint> sample_points(const Curve& c, std::size_t count) {
  const mpz_class& p = c.modulus().prime();
  std::seed_seq seed{p.get_ui(), c.a().value().get_ui(), c.b().value().get_ui()};
  std::mt19937_64 rng(seed);
  gmp_randclass gmp_rng(gmp_randinit_default);
  gmp_rng.seed(rng());
  std::vector<CurvePoint> out;
  while (out.size() < count) {
    mpz_class x = gmp_rng.get_z_range(p);
    mpz_class rhs = c.modulus().reduce(x * x * x + c.a().value() * x + c.b().value());
    auto y = sqrt_mod_prime(rhs, p);
    if (!y) continue;
    if (rng() & 1) *y = c.modulus().reduce(-*y);
    out.push_back(c.point(x, *y, 1));
  }
  return out;
}

// Largest k such that some point has l-part of order l^k, capped at v.
unsigned max_l_order(const Curve& c, const std::vector<CurvePoint>& pts, const mpz_class& l,
                     unsigned v, const mpz_class& cofactor) {
  unsigned best = 0;
  for (const auto& pt : pts) {
    CurvePoint r = c.multiply(cofactor, pt);
    unsigned k = 0;
    while (!r.is_zero() && k < v) {
      r = c.multiply(l, r);
      ++k;
    }
    best = std::max(best, k);
    if (best == v) break;
  }
  return best;
}

}  // namespace

mpz_class count_points_fp(const Curve& c, std::uint64_t budget) {
  const mpz_class& pz = require_prime_field(c);
  if (pz > budget || !pz.fits_ulong_p()) {
    throw BudgetExceeded("point counting budget exceeded for p = " + pz.get_str());
  }
  const u64 p = pz.get_ui();
  const u64 a = c.a().value().get_ui();
  const u64 b = c.b().value().get_ui();
  std::vector<unsigned char> square(p, 0);
  for (u64 y = 0; y <= p / 2; ++y) square[mulmod(y, y, p)] = 1;
  u64 count = 1;
  for (u64 x = 0; x < p; ++x) {
    const u64 rhs = (mulmod(mulmod(x, x, p), x, p) + mulmod(a, x, p) + b) % p;
    if (rhs == 0) {
      count += 1;
    } else if (square[rhs]) {
      count += 2;
    }
  }
  return mpz_class(count);
}

FieldCurveData group_structure_fp(const Curve& c, std::uint64_t budget) {
  const mpz_class& p = require_prime_field(c);
  FieldCurveData d;
  d.p = p;
  d.order = count_points_fp(c, budget);
  d.trace = p + 1 - d.order;
  d.n1 = d.order;
  d.n2 = 1;

  const mpz_class g = gcd(d.order, mpz_class(p - 1));
  std::vector<PrimePower> candidates;
  if (g > 1) {
    for (const auto& f : factorize(g)) {
      const unsigned v = mpz_remove(mpz_class().get_mpz_t(), d.order.get_mpz_t(), f.prime.get_mpz_t());
      if (v >= 2) candidates.push_back({f.prime, v});
    }
  }
  if (candidates.empty()) return d;

  const std::vector<CurvePoint> pts =
      d.p < 10'000 ? enumerate_points(c, 20'000) : sample_points(c, 40);
  for (const auto& [l, v] : candidates) {
    const mpz_class lv = power(l, v);
    const unsigned k = max_l_order(c, pts, l, v, d.order / lv);
    d.n2 *= power(l, v - k);
  }
  d.n1 = d.order / d.n2;
  return d;
}

bool is_anomalous(const Curve& c, std::uint64_t budget) {
  return count_points_fp(c, budget) == require_prime_field(c);
}

namespace {

// Whether the p-part of E(Z/p^eZ) is cyclic, given p | q = |E(F_p)|: a lift
// of a point of order p in E(F_p) either has order p^e or is killed by p^{e-1}.
bool p_part_cyclic(const Curve& c, const mpz_class& q) {
  const Modulus& m = c.modulus();
  const mpz_class& p = m.prime();
  const Curve base = c.reduce(Modulus::prime_power(p, 1));
  const mpz_class cofactor = q / p;
  for (mpz_class x = 0; x < p; ++x) {
    auto y = sqrt_mod_prime(x * x * x + base.a().value() * x + base.b().value(), p);
    if (!y) continue;
    const CurvePoint pt = base.multiply(cofactor, base.point(x, *y, 1));
    if (pt.is_zero()) continue;
    ZNEC_EXPECTS(base.multiply(p, pt).is_zero(), "p does not divide |E(F_p)|");
    const CurvePoint lifted = lift_point(c, pt);
    return !c.multiply(power(p, m.exponent() - 1), lifted).is_zero();
  }
  throw ContractViolation("E(F_p) has no point of order p");
}

}  // namespace

AnomalousType anomalous_type(const Curve& c) {
  const Modulus& m = c.modulus();
  if (!m.is_prime_power() || m.exponent() < 2) {
    throw ContractViolation("anomalous_type needs a modulus p^e with e >= 2");
  }
  const mpz_class& p = m.prime();
  return p_part_cyclic(c, p) ? AnomalousType::Cyclic : AnomalousType::Split;
}

std::string to_string(LocalCase c) {
  switch (c) {
    case LocalCase::NonAnomalous:
      return "non-anomalous";
    case LocalCase::AnomalousCyclic:
      return "cyclic";
    case LocalCase::AnomalousSplit:
      return "split";
  }
  return "?";
}

mpz_class GroupStructure::order() const {
  mpz_class r = 1;
  for (const auto& f : factors) r *= f;
  return r;
}

std::string GroupStructure::str() const {
  if (factors.empty()) return "0";
  std::string s;
  for (const auto& f : factors) {
    if (!s.empty()) s += " ⊕ ";
    s += "Z/" + f.get_str();
  }
  return s;
}

std::vector<mpz_class> invariant_factors(const std::vector<mpz_class>& cyclic_orders) {
  std::map<mpz_class, std::vector<unsigned>> by_prime;
  for (const auto& d : cyclic_orders) {
    ZNEC_EXPECTS(d >= 1, "cyclic orders must be positive");
    if (d == 1) continue;
    for (const auto& f : factorize(d)) by_prime[f.prime].push_back(f.exponent);
  }
  std::size_t len = 0;
  for (auto& [p, exps] : by_prime) {
    std::sort(exps.begin(), exps.end(), std::greater<>());
    len = std::max(len, exps.size());
  }
  // Largest factor first: it takes the largest power of every prime.
  std::vector<mpz_class> out(len, 1);
  for (const auto& [p, exps] : by_prime)
    for (std::size_t i = 0; i < exps.size(); ++i) out[i] *= power(p, exps[i]);
  std::reverse(out.begin(), out.end());
  return out;
}

GroupStructure classify(const Curve& c, const Budgets& budgets) {
  const Modulus& m = c.modulus();
  GroupStructure gs;
  gs.n = m.value();
  std::vector<mpz_class> all;
  for (std::size_t k = 0; k < m.factorization().size(); ++k) {
    const auto& [p, e] = m.factorization()[k];
    LocalStructure local{p, e, LocalCase::NonAnomalous, 0, {}};
    const FieldCurveData fp = group_structure_fp(c.reduce(Modulus::prime_power(p, 1)), budgets.counting);
    local.fp_order = fp.order;
    std::vector<mpz_class> orders;
    if (fp.order != p && (e == 1 || !mpz_divisible_p(fp.order.get_mpz_t(), p.get_mpz_t()))) {
      orders = {fp.n1, fp.n2, power(p, e - 1)};
    } else if (fp.order != p) {
      // |E(F_p)| = 2p (only p = 5 fits the Hasse bound): the p-part may be cyclic.
      const mpz_class p_free = fp.order / p;
      if (p_part_cyclic(c.reduce(m.component(k)), fp.order)) {
        orders = {fp.n2, p_free / fp.n2, power(p, e)};
      } else {
        orders = {fp.n1, fp.n2, power(p, e - 1)};
      }
    } else if (e == 1) {
      local.kind = LocalCase::AnomalousCyclic;
      orders = {p};
    } else if (anomalous_type(c.reduce(m.component(k))) == AnomalousType::Cyclic) {
      local.kind = LocalCase::AnomalousCyclic;
      orders = {power(p, e)};
    } else {
      local.kind = LocalCase::AnomalousSplit;
      orders = {p, power(p, e - 1)};
    }
    local.factors = invariant_factors(orders);
    all.insert(all.end(), orders.begin(), orders.end());
    gs.local.push_back(std::move(local));
  }
  gs.factors = invariant_factors(all);
  return gs;
}

PhiValue phi_map(const Curve& c, const mpz_class& fp_order, const CurvePoint& pt) {
  const Modulus& m = c.modulus();
  if (!m.is_prime_power()) throw ContractViolation("phi_map needs a prime-power modulus");
  const unsigned e = m.exponent();
  if (e < 1 || e > 5) throw ContractViolation("phi_map is only a homomorphism for e <= 5");
  const mpz_class& p = m.prime();
  const Curve base = c.reduce(Modulus::prime_power(p, 1));
  const mpz_class inf_mod = power(p, e - 1);
  auto x = infinity_coordinate(c.multiply(fp_order, pt));
  if (!x) throw std::logic_error("q * P does not lie over O; wrong |E(F_p)|?");
  const mpz_class part = mpz_class(x->value() / p) % inf_mod;
  return PhiValue{c.project(pt, base), part, inf_mod};
}

GroupStructure brute_force_structure(const Curve& c, std::uint64_t budget) {
  const std::vector<CurvePoint> pts = enumerate_points(c, budget);
  const std::size_t n = pts.size();
  std::unordered_map<Triple, std::size_t, TripleHash> index;
  index.reserve(n * 2);
  for (std::size_t i = 0; i < n; ++i) index.emplace(pts[i].coords(), i);
  const std::size_t zero = index.at(c.zero().coords());

  std::vector<mpz_class> elementary;
  for (const auto& [l, v] : factorize(mpz_class(n))) {
    if (v == 1) {
      elementary.push_back(l);
      continue;
    }
    std::vector<std::size_t> times_l(n);
    for (std::size_t i = 0; i < n; ++i) times_l[i] = index.at(c.multiply(l, pts[i]).coords());
    // log_l |E[l^k]| for k = 0, 1, ... until the whole l-part is reached.
    std::vector<unsigned> logs{0};
    std::vector<std::size_t> image(n);
    for (std::size_t i = 0; i < n; ++i) image[i] = i;
    while (logs.back() < v) {
      for (auto& i : image) i = times_l[i];
      const auto killed = static_cast<std::size_t>(std::count(image.begin(), image.end(), zero));
      mpz_class rest = killed;
      const unsigned k = mpz_remove(rest.get_mpz_t(), rest.get_mpz_t(), l.get_mpz_t());
      if (rest != 1 || k <= logs.back()) throw std::logic_error("torsion counts are not a tower of l-powers");
      logs.push_back(k);
    }
    // logs[k] - logs[k-1] cyclic factors have order >= l^k.
    for (std::size_t k = 1; k < logs.size(); ++k) {
      const unsigned at_least_k = logs[k] - logs[k - 1];
      const unsigned at_least_next = k + 1 < logs.size() ? logs[k + 1] - logs[k] : 0;
      for (unsigned r = 0; r < at_least_k - at_least_next; ++r) elementary.push_back(power(l, k));
    }
  }
  GroupStructure gs;
  gs.n = c.modulus().value();
  gs.factors = invariant_factors(elementary);
  return gs;
}

}  // namespace znec
