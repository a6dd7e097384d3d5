#include "znec/curve.hpp"

#include <algorithm>
#include <limits>

namespace znec {

namespace {

thread_local std::uint64_t g_additions = 0;

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

// Residue r -> all y in [0, q) with y^2 = r, stored as one flat array.
class SquareRootTable {
 public:
  explicit SquareRootTable(u64 q) : offsets_(q + 1, 0), roots_(q) {
    for (u64 y = 0; y < q; ++y) ++offsets_[mulmod(y, y, q) + 1];
    for (u64 r = 0; r < q; ++r) offsets_[r + 1] += offsets_[r];
    std::vector<u64> fill(offsets_.begin(), offsets_.end() - 1);
    for (u64 y = 0; y < q; ++y) roots_[fill[mulmod(y, y, q)]++] = y;
  }
  std::pair<const u64*, const u64*> roots(u64 r) const {
    return {roots_.data() + offsets_[r], roots_.data() + offsets_[r + 1]};
  }

 private:
  std::vector<u64> offsets_;
  std::vector<u64> roots_;
};

struct ComponentPoint {
  u64 x, y, z;
};

std::vector<ComponentPoint> component_points(u64 a, u64 b, u64 p, unsigned e, u64 q) {
  std::vector<ComponentPoint> pts;
  SquareRootTable table(q);
  for (u64 x = 0; x < q; ++x) {
    u64 rhs = (mulmod(mulmod(x, x, q), x, q) + mulmod(a, x, q) + b) % q;
    auto [lo, hi] = table.roots(rhs);
    for (const u64* y = lo; y != hi; ++y) pts.push_back({x, *y, 1});
  }
  // Infinity: (X : 1 : Z) with p | X; Z is the unique root divisible by p of
  // Z = X^3 + AXZ^2 + BZ^3, reached by fixed-point iteration (each step gains
  // at least one p-adic digit).
  for (u64 x = 0; x < q; x += p) {
    const u64 x3 = mulmod(mulmod(x, x, q), x, q);
    const u64 ax = mulmod(a, x, q);
    u64 z = 0;
    for (unsigned it = 0; it <= e + 1; ++it) {
      const u64 z2 = mulmod(z, z, q);
      const u64 next = (x3 + mulmod(ax, z2, q) + mulmod(b, mulmod(z2, z, q), q)) % q;
      if (next == z) break;
      z = next;
    }
    pts.push_back({x, 1, z});
  }
  return pts;
}

}  // namespace

// ---------------------------------------------------------------------------

Curve::Curve(const Modulus& modulus, const mpz_class& a, const mpz_class& b)
    : modulus_(modulus), a_(modulus, a), b_(modulus, b), discriminant_(modulus, 0) {
  const mpz_class& n = modulus_.value();
  if (gcd(n, mpz_class(6)) != 1) {
    throw BadCharacteristic("short Weierstrass form needs gcd(6, N) = 1, N = " + n.get_str());
  }
  const mpz_class& av = a_.value();
  const mpz_class& bv = b_.value();
  discriminant_ = modulus_(-(4 * av * av * av + 27 * bv * bv));
  mpz_class g = gcd(discriminant_.value(), n);
  if (g != 1) {
    mpz_class prime;
    for (const auto& f : modulus_.factorization()) {
      if (mpz_divisible_p(g.get_mpz_t(), f.prime.get_mpz_t())) {
        prime = f.prime;
        break;
      }
    }
    throw SingularCurve(g, prime);
  }
}

Curve make_curve(const mpz_class& a, const mpz_class& b, const mpz_class& n) {
  return Curve(Modulus(n), a, b);
}

bool Curve::contains(const ProjectivePoint& p) const {
  ZNEC_EXPECTS(p.modulus() == modulus_, "point and curve live over different rings");
  const auto& [x, y, z] = p.coords();
  const mpz_class z2 = z * z;
  mpz_class lhs = y * y * z;
  mpz_class rhs = x * x * x + a_.value() * x * z2 + b_.value() * z2 * z;
  return modulus_.reduce(lhs - rhs) == 0;
}

CurvePoint Curve::point(const ProjectivePoint& p) const {
  if (!contains(p)) throw NotOnCurve(p.str() + " is not on the curve");
  return CurvePoint(p);
}

CurvePoint Curve::point(const mpz_class& x, const mpz_class& y, const mpz_class& z) const {
  return point(ProjectivePoint(modulus_, Triple{x, y, z}));
}

CurvePoint Curve::zero() const { return trusted(Triple{0, 1, 0}); }

CurvePoint Curve::trusted(Triple canonical) const {
  return CurvePoint(ProjectivePoint(modulus_, std::move(canonical), ProjectivePoint::Trusted{}));
}

std::array<Triple, 2> addition_law_outputs(const Curve& c, const Triple& p, const Triple& q) {
  const mpz_class& A = c.a().value();
  const mpz_class& B = c.b().value();
  const auto& [x1, y1, z1] = p;
  const auto& [x2, y2, z2] = q;

  const mpz_class xy_m = x1 * y2 - x2 * y1;
  const mpz_class xy_p = x1 * y2 + x2 * y1;
  const mpz_class xz_m = x1 * z2 - x2 * z1;
  const mpz_class xz_p = x1 * z2 + x2 * z1;
  const mpz_class yz_m = y1 * z2 - y2 * z1;
  const mpz_class yz_p = y1 * z2 + y2 * z1;
  const mpz_class x1x2 = x1 * x2;
  const mpz_class y1y2 = y1 * y2;
  const mpz_class z1z2 = z1 * z2;
  const mpz_class A2 = A * A;
  const mpz_class B3 = 3 * B;

  Triple s;
  s[0] = xy_m * yz_p + xz_m * y1y2 - A * xz_m * xz_p - B3 * xz_m * z1z2;
  s[1] = -3 * x1x2 * xy_m - y1y2 * yz_m - A * xy_m * z1z2 + A * yz_m * xz_p + B3 * yz_m * z1z2;
  s[2] = 3 * x1x2 * xz_m - yz_m * yz_p + A * xz_m * z1z2;

  const mpz_class x1z2 = x1 * z2;
  const mpz_class x2z1 = x2 * z1;
  Triple t;
  t[0] = y1y2 * xy_p - A * x1x2 * yz_p - A * xy_p * xz_p - B3 * xy_p * z1z2 - B3 * xz_p * yz_p +
         A2 * yz_p * z1z2;
  t[1] = y1y2 * y1y2 + 3 * A * x1x2 * x1x2 + 9 * B * x1x2 * xz_p - A2 * x1z2 * (x1z2 + 2 * x2z1) -
         A2 * x2z1 * (2 * x1z2 + x2z1) - 3 * A * B * z1z2 * xz_p - (A2 * A + 9 * B * B) * z1z2 * z1z2;
  t[2] = 3 * x1x2 * xy_p + y1y2 * yz_p + A * xy_p * z1z2 + A * xz_p * yz_p + B3 * yz_p * z1z2;

  const Modulus& m = c.modulus();
  for (auto& v : s) v = m.reduce(v);
  for (auto& v : t) v = m.reduce(v);
  return {s, t};
}

CurvePoint Curve::add(const CurvePoint& p, const CurvePoint& q) const {
  ZNEC_EXPECTS(p.modulus() == modulus_ && q.modulus() == modulus_,
               "points and curve live over different rings");
  ++g_additions;
  auto [s, t] = addition_law_outputs(*this, p.coords(), q.coords());
  const mpz_class& n = modulus_.value();
  if (is_primitive(s, n)) return trusted(canonicalize(modulus_, s));
  if (is_primitive(t, n)) return trusted(canonicalize(modulus_, t));

  Matrix laws(modulus_, 3, 2);
  for (std::size_t r = 0; r < 3; ++r) {
    laws.set(r, 0, s[r]);
    laws.set(r, 1, t[r]);
  }
  std::vector<Residue> beta;
  try {
    beta = primitive_combination(laws);
  } catch (const NotPrimitive&) {
    throw BothLawsVanish("both addition laws vanish for " + p.str() + " + " + q.str());
  }
  Triple sum;
  for (std::size_t r = 0; r < 3; ++r) sum[r] = beta[0].value() * s[r] + beta[1].value() * t[r];
  return trusted(canonicalize(modulus_, sum));
}

CurvePoint Curve::negate(const CurvePoint& p) const {
  ZNEC_EXPECTS(p.modulus() == modulus_, "point and curve live over different rings");
  const auto& c = p.coords();
  return trusted(canonicalize(modulus_, Triple{c[0], modulus_.reduce(-c[1]), c[2]}));
}

CurvePoint Curve::multiply(const mpz_class& k, const CurvePoint& p) const {
  if (k < 0) return multiply(-k, negate(p));
  CurvePoint acc = zero();
  if (k == 0 || p.is_zero()) return acc;
  const std::size_t bits = mpz_sizeinbase(k.get_mpz_t(), 2);
  for (std::size_t i = bits; i-- > 0;) {
    if (!acc.is_zero()) acc = add(acc, acc);
    if (mpz_tstbit(k.get_mpz_t(), i)) acc = acc.is_zero() ? p : add(acc, p);
  }
  return acc;
}

Curve Curve::reduce(const Modulus& target) const {
  ZNEC_EXPECTS(mpz_divisible_p(modulus_.value().get_mpz_t(), target.value().get_mpz_t()),
               "reduction target must divide the modulus");
  return Curve(target, a_.value(), b_.value());
}

CurvePoint Curve::project(const CurvePoint& p, const Curve& target) const {
  ZNEC_EXPECTS(target.a() == target.modulus()(a_.value()) && target.b() == target.modulus()(b_.value()),
               "target curve is not a reduction of this curve");
  return target.trusted(znec::reduce(p.point(), target.modulus()).coords());
}

// ---------------------------------------------------------------------------

std::vector<CurvePoint> enumerate_points(const Curve& c, std::uint64_t budget) {
  const Modulus& m = c.modulus();
  const auto& factors = m.factorization();
  const auto& comps = m.components();
  const u64 limit = std::min<u64>(budget, std::numeric_limits<std::uint32_t>::max());

  std::vector<std::vector<ComponentPoint>> parts;
  u64 total = 1;
  for (std::size_t k = 0; k < comps.size(); ++k) {
    if (comps[k] > limit) {
      throw BudgetExceeded("component modulus " + comps[k].get_str() + " exceeds the enumeration budget");
    }
    const u64 q = comps[k].get_ui();
    const u64 a = mpz_class(c.a().value() % comps[k]).get_ui();
    const u64 b = mpz_class(c.b().value() % comps[k]).get_ui();
    parts.push_back(component_points(a, b, factors[k].prime.get_ui(), factors[k].exponent, q));
    total *= parts.back().size();
    if (total > budget) throw BudgetExceeded("curve has more points than the enumeration budget");
  }

  std::vector<Triple> triples;
  triples.reserve(total);
  if (parts.size() == 1) {
    for (const auto& pt : parts[0]) triples.push_back(Triple{pt.x, pt.y, pt.z});
  } else {
    std::vector<std::size_t> idx(parts.size(), 0);
    std::vector<mpz_class> column(parts.size());
    while (true) {
      Triple t;
      for (int i = 0; i < 3; ++i) {
        for (std::size_t k = 0; k < parts.size(); ++k) {
          const auto& pt = parts[k][idx[k]];
          column[k] = i == 0 ? pt.x : (i == 1 ? pt.y : pt.z);
        }
        t[i] = m.glue(column);
      }
      triples.push_back(std::move(t));
      std::size_t k = 0;
      while (k < parts.size() && ++idx[k] == parts[k].size()) idx[k++] = 0;
      if (k == parts.size()) break;
    }
  }
  std::sort(triples.begin(), triples.end());
  std::vector<CurvePoint> out;
  out.reserve(triples.size());
  for (auto& t : triples) out.push_back(c.trusted(std::move(t)));
  return out;
}

AdditionCounter::AdditionCounter() : start_(g_additions) {}

std::uint64_t AdditionCounter::count() const { return g_additions - start_; }

}  // namespace znec
