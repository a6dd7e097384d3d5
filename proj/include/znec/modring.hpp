#pragma once

// Exact arithmetic in Z/NZ: factored moduli, residues, CRT, p-adic
// valuations, primitivity, minor ideals and primitive column combinations.

#include <gmpxx.h>

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "znec/errors.hpp"

namespace znec {

struct PrimePower {
  mpz_class prime;
  unsigned exponent = 1;

  mpz_class value() const;
  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

using Factorization = std::vector<PrimePower>;

/// Deterministic Miller-Rabin below 3.3e24; GMP's BPSW test above that.
bool is_prime(const mpz_class& n);

/// Complete factorization sorted by prime (trial division + Pollard-Brent rho).
Factorization factorize(const mpz_class& n);

/// Legendre symbol (a/p) for an odd prime p.
int legendre(const mpz_class& a, const mpz_class& p);

/// A square root of a modulo the odd prime p (Tonelli-Shanks), if one exists.
std::optional<mpz_class> sqrt_mod_prime(const mpz_class& a, const mpz_class& p);

class Residue;

/// An integer N >= 2 together with its factorization and the CRT data
/// derived from it. Cheap to copy; all copies share one immutable record.
class Modulus {
 public:
  /// Factorizes n. Requires n >= 2.
  explicit Modulus(const mpz_class& n);
  /// Uses a caller-supplied factorization; every prime is checked.
  explicit Modulus(Factorization factors);

  static Modulus prime_power(const mpz_class& p, unsigned e);

  const mpz_class& value() const { return data_->n; }
  const Factorization& factorization() const { return data_->factors; }
  bool is_prime_power() const { return data_->factors.size() == 1; }
  /// The prime p of a prime-power modulus p^e.
  const mpz_class& prime() const;
  unsigned exponent() const;

  /// p_i^{e_i} for each prime factor, in factorization order.
  const std::vector<mpz_class>& components() const { return data_->components; }
  /// CRT idempotents: idempotents()[i] is 1 mod components()[i], 0 mod the rest.
  const std::vector<mpz_class>& idempotents() const { return data_->idempotents; }
  /// Product of the distinct primes.
  const mpz_class& radical() const { return data_->radical; }

  /// Reduces an arbitrary integer into [0, N).
  mpz_class reduce(const mpz_class& x) const;
  Residue operator()(const mpz_class& x) const;
  Residue operator()(long x) const;

  /// Glues per-component values (one per components() entry) into [0, N).
  mpz_class glue(std::span<const mpz_class> parts) const;

  /// The modulus obtained by keeping the components listed (as indices).
  Modulus component(std::size_t index) const;

  friend bool operator==(const Modulus& a, const Modulus& b) {
    return a.data_ == b.data_ || a.data_->n == b.data_->n;
  }

 private:
  struct Data {
    mpz_class n;
    Factorization factors;
    std::vector<mpz_class> components;
    std::vector<mpz_class> idempotents;
    mpz_class radical;
  };
  static std::shared_ptr<const Data> build(Factorization factors);

  std::shared_ptr<const Data> data_;
};

/// An element of Z/NZ, stored reduced into [0, N).
class Residue {
 public:
  Residue(const Modulus& modulus, const mpz_class& value)
      : modulus_(modulus), value_(modulus.reduce(value)) {}

  const mpz_class& value() const { return value_; }
  const Modulus& modulus() const { return modulus_; }

  bool is_zero() const { return value_ == 0; }
  bool is_unit() const;

  Residue operator+(const Residue& o) const;
  Residue operator-(const Residue& o) const;
  Residue operator*(const Residue& o) const;
  Residue operator-() const;
  Residue pow(const mpz_class& exponent) const;

  /// Throws NonInvertible carrying gcd(value, N) when that gcd exceeds 1.
  Residue inverse() const;

  std::string str() const { return value_.get_str(); }

  friend bool operator==(const Residue& a, const Residue& b) {
    return a.modulus_ == b.modulus_ && a.value_ == b.value_;
  }

 private:
  struct Reduced {};
  Residue(const Modulus& modulus, mpz_class value, Reduced)
      : modulus_(modulus), value_(std::move(value)) {}
  void check_same(const Residue& o) const;

  Modulus modulus_;
  mpz_class value_;
};

Residue inverse(const Residue& x);

/// p-adic valuation over Z/p^eZ, with vp(0) = e.
unsigned vp(const Residue& x, const mpz_class& p);

/// Combines residues modulo pairwise coprime moduli into one residue modulo
/// their product. Throws NotCoprime otherwise.
Residue crt_combine(std::span<const Residue> residues);

/// True iff the entries generate the unit ideal, i.e. gcd(entries, N) = 1.
bool is_primitive(std::span<const Residue> tuple);
bool is_primitive(std::span<const mpz_class> values, const mpz_class& n);

/// A dense rows x cols matrix over Z/NZ.
class Matrix {
 public:
  Matrix(Modulus modulus, std::size_t rows, std::size_t cols);
  Matrix(Modulus modulus, const std::vector<std::vector<long>>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const Modulus& modulus() const { return modulus_; }

  const mpz_class& at(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }
  void set(std::size_t r, std::size_t c, const mpz_class& v) {
    entries_[r * cols_ + c] = modulus_.reduce(v);
  }
  std::vector<mpz_class> column(std::size_t c) const;

 private:
  Modulus modulus_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<mpz_class> entries_;
};

/// Generators of the t-th minor ideal: every t x t minor. I_0 is {1}; for
/// t > min(rows, cols) the list is {0}.
std::vector<Residue> minor_ideal_generators(const Matrix& m, std::size_t t);

struct MinorIdealProfile {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::vector<Residue>> generators;  // indexed by t, 0..min(rows, cols)
};
MinorIdealProfile minor_ideal_profile(const Matrix& m);

/// Largest t such that some t x t minor is nonzero.
std::size_t strong_rank(const Matrix& m);

/// Coefficients b_i (mod N) with sum b_i * column_i primitive, built one prime
/// at a time and glued by CRT. Throws NotPrimitive when the entries of the
/// matrix are not primitive.
std::vector<Residue> primitive_combination(const Matrix& m);

}  // namespace znec
