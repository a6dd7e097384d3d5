#include "znec/infinity.hpp"

#include <algorithm>

namespace znec {

namespace {

// Dense polynomial in x, z keeping only monomials x^i z^j with i + j < e.
class TruncatedPoly {
 public:
  TruncatedPoly(unsigned e, const mpz_class* q) : e_(e), q_(q), c_(e * e) {}

  mpz_class& at(unsigned i, unsigned j) { return c_[i * e_ + j]; }
  const mpz_class& at(unsigned i, unsigned j) const { return c_[i * e_ + j]; }

  void add_term(unsigned i, unsigned j, const mpz_class& v) {
    if (i + j >= e_) return;
    mpz_class& slot = at(i, j);
    slot += v;
    mpz_mod(slot.get_mpz_t(), slot.get_mpz_t(), q_->get_mpz_t());
  }

  TruncatedPoly operator*(const TruncatedPoly& o) const {
    TruncatedPoly r(e_, q_);
    for (unsigned i = 0; i < e_; ++i)
      for (unsigned j = 0; i + j < e_; ++j) {
        if (at(i, j) == 0) continue;
        for (unsigned k = 0; i + j + k < e_; ++k)
          for (unsigned l = 0; i + j + k + l < e_; ++l) {
            if (o.at(k, l) == 0) continue;
            r.at(i + k, j + l) += at(i, j) * o.at(k, l);
          }
      }
    for (auto& v : r.c_) mpz_mod(v.get_mpz_t(), v.get_mpz_t(), q_->get_mpz_t());
    return r;
  }

  bool has_z_terms() const {
    for (unsigned i = 0; i < e_; ++i)
      for (unsigned j = 1; i + j < e_; ++j)
        if (at(i, j) != 0) return true;
    return false;
  }

  bool is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](const mpz_class& v) { return v == 0; });
  }

  unsigned e() const { return e_; }

 private:
  unsigned e_;
  const mpz_class* q_;
  std::vector<mpz_class> c_;
};

}  // namespace

InfinityPolynomial::InfinityPolynomial(const Curve& curve) : curve_(curve) {
  const Modulus& m = curve.modulus();
  if (!m.is_prime_power()) throw ContractViolation("infinity polynomial needs a prime-power modulus");
  const unsigned e = m.exponent();
  const mpz_class& q = m.value();

  TruncatedPoly f0(e, &q);
  f0.add_term(3, 0, 1);
  f0.add_term(1, 2, curve.a().value());
  f0.add_term(0, 3, curve.b().value());

  // Powers of F0; F0^j has minimal degree 3j, so only j < e/3 survive.
  std::vector<TruncatedPoly> powers;
  TruncatedPoly one(e, &q);
  one.add_term(0, 0, 1);
  powers.push_back(one);
  while (!powers.back().is_zero() && powers.size() < e) powers.push_back(powers.back() * f0);

  TruncatedPoly current = f0;
  while (current.has_z_terms()) {
    TruncatedPoly next(e, &q);
    for (unsigned i = 0; i < e; ++i)
      for (unsigned j = 0; i + j < e && j < powers.size(); ++j) {
        if (current.at(i, j) == 0) continue;
        const TruncatedPoly& pw = powers[j];
        for (unsigned k = 0; i + k < e; ++k)
          for (unsigned l = 0; i + k + l < e; ++l) {
            if (pw.at(k, l) == 0) continue;
            next.add_term(i + k, l, current.at(i, j) * pw.at(k, l));
          }
      }
    current = std::move(next);
  }

  coeffs_.reserve(e);
  for (unsigned i = 0; i < e; ++i) coeffs_.push_back(m(current.at(i, 0)));
}

Residue InfinityPolynomial::operator()(const Residue& x) const {
  ZNEC_EXPECTS(x.modulus() == curve_.modulus(), "argument lives over a different ring");
  Residue acc = curve_.modulus()(0);
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

InfinityPolynomial compute_f(const Curve& curve) { return InfinityPolynomial(curve); }

CurvePoint infinity_point(const InfinityPolynomial& f, const Residue& x) {
  const Modulus& m = f.curve().modulus();
  ZNEC_EXPECTS(x.modulus() == m, "argument lives over a different ring");
  ZNEC_EXPECTS(mpz_divisible_p(x.value().get_mpz_t(), m.prime().get_mpz_t()),
               "points at infinity need p | X");
  return f.curve().point(x.value(), 1, f(x).value());
}

CurvePoint kernel_generator(const InfinityPolynomial& f) {
  const Modulus& m = f.curve().modulus();
  return infinity_point(f, m(m.prime()));
}

std::optional<Residue> infinity_coordinate(const CurvePoint& p) {
  const Modulus& m = p.modulus();
  ZNEC_EXPECTS(m.is_prime_power(), "infinity coordinates need a prime-power modulus");
  const auto& [x, y, z] = p.coords();
  const mpz_class& prime = m.prime();
  if (y != 1 || !mpz_divisible_p(x.get_mpz_t(), prime.get_mpz_t()) ||
      !mpz_divisible_p(z.get_mpz_t(), prime.get_mpz_t())) {
    return std::nullopt;
  }
  return m(x);
}

InfinitySum infinity_sum_check(const InfinityPolynomial& f, const Residue& x1, const Residue& x2) {
  const Curve& c = f.curve();
  const Modulus& m = c.modulus();
  const mpz_class& p = m.prime();
  const unsigned e = m.exponent();
  CurvePoint sum = c.add(infinity_point(f, x1), infinity_point(f, x2));
  auto x3 = infinity_coordinate(sum);
  if (!x3) throw std::logic_error("sum of points at infinity left E^inf: " + sum.str());
  const unsigned precision = std::min(5 * std::min(vp(x1, p), vp(x2, p)), e);
  const unsigned diff = vp(*x3 - x1 - x2, p);
  return InfinitySum{*x3, precision, diff};
}

}  // namespace znec
