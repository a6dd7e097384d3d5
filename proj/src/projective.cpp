#include "znec/projective.hpp"

#include <vector>

namespace znec {

namespace {

// Normalizes one prime-power component in place. Returns false when no
// coordinate is a unit, i.e. the triple is not primitive modulo p.
bool normalize_component(Triple& t, const mpz_class& p, const mpz_class& q) {
  for (int i = 2; i >= 0; --i) {
    if (mpz_divisible_p(t[i].get_mpz_t(), p.get_mpz_t())) continue;
    if (t[i] == 1) return true;
    mpz_class inv;
    mpz_invert(inv.get_mpz_t(), t[i].get_mpz_t(), q.get_mpz_t());
    for (int j = 0; j < 3; ++j) {
      if (j == i) continue;
      t[j] *= inv;
      mpz_mod(t[j].get_mpz_t(), t[j].get_mpz_t(), q.get_mpz_t());
    }
    t[i] = 1;
    return true;
  }
  return false;
}

}  // namespace

Triple canonicalize(const Modulus& modulus, const Triple& coords) {
  const auto& factors = modulus.factorization();
  if (factors.size() == 1) {
    Triple t;
    for (int i = 0; i < 3; ++i) t[i] = modulus.reduce(coords[i]);
    if (!normalize_component(t, factors[0].prime, modulus.value())) {
      throw NotPrimitive("triple is not primitive modulo " + factors[0].prime.get_str());
    }
    return t;
  }
  const auto& comps = modulus.components();
  std::vector<Triple> parts(comps.size());
  for (std::size_t k = 0; k < comps.size(); ++k) {
    for (int i = 0; i < 3; ++i) {
      mpz_mod(parts[k][i].get_mpz_t(), coords[i].get_mpz_t(), comps[k].get_mpz_t());
    }
    if (!normalize_component(parts[k], factors[k].prime, comps[k])) {
      throw NotPrimitive("triple is not primitive modulo " + factors[k].prime.get_str());
    }
  }
  Triple out;
  std::vector<mpz_class> column(comps.size());
  for (int i = 0; i < 3; ++i) {
    for (std::size_t k = 0; k < comps.size(); ++k) column[k] = parts[k][i];
    out[i] = modulus.glue(column);
  }
  return out;
}

ProjectivePoint::ProjectivePoint(const Modulus& modulus, const Triple& coords)
    : modulus_(modulus), coords_(canonicalize(modulus, coords)) {}

ProjectivePoint make_point(const Residue& x, const Residue& y, const Residue& z) {
  ZNEC_EXPECTS(x.modulus() == y.modulus() && y.modulus() == z.modulus(),
               "point coordinates must share a modulus");
  return ProjectivePoint(x.modulus(), Triple{x.value(), y.value(), z.value()});
}

bool points_equal(const ProjectivePoint& a, const ProjectivePoint& b) {
  ZNEC_EXPECTS(a.modulus() == b.modulus(), "comparing points over different rings");
  return a.coords() == b.coords();
}

ProjectivePoint reduce(const ProjectivePoint& p, const Modulus& target) {
  ZNEC_EXPECTS(mpz_divisible_p(p.modulus().value().get_mpz_t(), target.value().get_mpz_t()),
               "reduction target must divide the modulus");
  return ProjectivePoint(target, p.coords());
}

std::string ProjectivePoint::str() const {
  return "(" + coords_[0].get_str() + " : " + coords_[1].get_str() + " : " + coords_[2].get_str() + ")";
}

std::ostream& operator<<(std::ostream& os, const ProjectivePoint& p) { return os << p.str(); }

std::size_t TripleHash::operator()(const Triple& t) const noexcept {
  std::size_t h = 0;
  for (const auto& c : t) {
    std::size_t limb = mpz_size(c.get_mpz_t()) ? mpz_getlimbn(c.get_mpz_t(), 0) : 0;
    h ^= limb + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

}  // namespace znec
