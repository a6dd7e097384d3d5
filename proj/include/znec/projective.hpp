#pragma once

#include <gmpxx.h>

#include <array>
#include <cstddef>
#include <ostream>
#include <string>

#include "znec/modring.hpp"

namespace znec {

using Triple = std::array<mpz_class, 3>;

/// Canonical representative of the orbit of a primitive triple under unit
/// scaling. Over Z/p^eZ the rightmost unit coordinate is scaled to 1, which
/// gives (X:Y:1) for affine points and (X:1:Z) with p | X, p | Z for points at
/// infinity on a curve. For composite N each prime-power component is
/// normalized separately and the results are glued by CRT.
/// Throws NotPrimitive.
Triple canonicalize(const Modulus& modulus, const Triple& coords);

/// A point of P^2(Z/NZ), always held in canonical form, so two points are
/// equal exactly when their coordinates are.
class ProjectivePoint {
 public:
  /// Throws NotPrimitive when (x, y, z) does not generate the unit ideal.
  ProjectivePoint(const Modulus& modulus, const Triple& coords);

  const Modulus& modulus() const { return modulus_; }
  const Triple& coords() const { return coords_; }
  Residue x() const { return modulus_(coords_[0]); }
  Residue y() const { return modulus_(coords_[1]); }
  Residue z() const { return modulus_(coords_[2]); }

  /// (0:1:0)
  bool is_origin() const { return coords_[0] == 0 && coords_[1] == 1 && coords_[2] == 0; }

  /// "(X : Y : Z)"
  std::string str() const;

  friend bool operator==(const ProjectivePoint& a, const ProjectivePoint& b) {
    return a.modulus_ == b.modulus_ && a.coords_ == b.coords_;
  }

 private:
  friend class Curve;
  struct Trusted {};
  ProjectivePoint(const Modulus& modulus, Triple canonical, Trusted)
      : modulus_(modulus), coords_(std::move(canonical)) {}

  Modulus modulus_;
  Triple coords_;
};

/// Builds a point from residues sharing a modulus. Throws NotPrimitive.
ProjectivePoint make_point(const Residue& x, const Residue& y, const Residue& z);

/// Points are stored canonically, so this returns the point itself.
inline const ProjectivePoint& canonicalize(const ProjectivePoint& p) { return p; }

/// Orbit equality under R* scaling. Requires a shared modulus.
bool points_equal(const ProjectivePoint& a, const ProjectivePoint& b);

/// The image under Z/NZ -> Z/MZ for a divisor M of N.
ProjectivePoint reduce(const ProjectivePoint& p, const Modulus& target);

std::ostream& operator<<(std::ostream& os, const ProjectivePoint& p);

struct TripleHash {
  std::size_t operator()(const Triple& t) const noexcept;
};

}  // namespace znec
