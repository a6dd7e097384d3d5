#include "znec/modring.hpp"

#include <algorithm>
#include <array>
#include <numeric>

namespace znec {

namespace {

constexpr std::array<unsigned long, 13> kWitnesses = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41};

// Bound below which the witnesses above make Miller-Rabin deterministic.
const mpz_class& deterministic_limit() {
  static const mpz_class limit("3317044064679887385961981");
  return limit;
}

bool miller_rabin(const mpz_class& n, unsigned long base) {
  mpz_class d = n - 1;
  unsigned long s = mpz_scan1(d.get_mpz_t(), 0);
  d >>= s;
  mpz_class x;
  mpz_class b = base;
  mpz_powm(x.get_mpz_t(), b.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
  if (x == 1 || x == n - 1) return true;
  for (unsigned long r = 1; r < s; ++r) {
    x = (x * x) % n;
    if (x == n - 1) return true;
  }
  return false;
}

// Pollard-Brent rho. n is odd, composite, and not a perfect power of a small prime.
mpz_class pollard_brent(const mpz_class& n) {
  for (unsigned long c = 1;; ++c) {
    mpz_class y = 2, x, ys, q = 1, g = 1;
    unsigned long r = 1;
    const unsigned long m = 128;
    auto step = [&](const mpz_class& v) { return mpz_class((v * v + c) % n); };
    do {
      x = y;
      for (unsigned long i = 0; i < r; ++i) y = step(y);
      unsigned long k = 0;
      do {
        ys = y;
        for (unsigned long i = 0; i < std::min(m, r - k); ++i) {
          y = step(y);
          mpz_class diff = x - y;
          q = (q * abs(diff)) % n;
        }
        g = gcd(q, n);
        k += m;
      } while (k < r && g == 1);
      r *= 2;
    } while (g == 1);
    if (g == n) {
      do {
        ys = step(ys);
        mpz_class diff = x - ys;
        g = gcd(mpz_class(abs(diff)), n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void factor_into(const mpz_class& n, std::vector<mpz_class>& primes) {
  if (n == 1) return;
  if (is_prime(n)) {
    primes.push_back(n);
    return;
  }
  mpz_class root;
  for (unsigned long k = 2; k < 64; ++k) {
    if (mpz_root(root.get_mpz_t(), n.get_mpz_t(), k) != 0) {
      std::vector<mpz_class> sub;
      factor_into(root, sub);
      for (unsigned long i = 0; i < k; ++i) primes.insert(primes.end(), sub.begin(), sub.end());
      return;
    }
  }
  mpz_class d = pollard_brent(n);
  factor_into(d, primes);
  factor_into(n / d, primes);
}

// Determinant over Z by fraction-free (Bareiss) elimination.
mpz_class integer_determinant(std::vector<std::vector<mpz_class>> a) {
  const std::size_t n = a.size();
  if (n == 0) return 1;
  int sign = 1;
  mpz_class prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t swap = k + 1;
      while (swap < n && a[swap][k] == 0) ++swap;
      if (swap == n) return 0;
      std::swap(a[k], a[swap]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
      }
    }
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

// Calls fn(indices) for every increasing t-subset of [0, n).
template <typename Fn>
void for_each_subset(std::size_t n, std::size_t t, Fn&& fn) {
  std::vector<std::size_t> idx(t);
  std::iota(idx.begin(), idx.end(), 0);
  while (true) {
    fn(idx);
    std::size_t i = t;
    while (i > 0 && idx[i - 1] == n - t + (i - 1)) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < t; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace

mpz_class PrimePower::value() const {
  mpz_class v;
  mpz_pow_ui(v.get_mpz_t(), prime.get_mpz_t(), exponent);
  return v;
}

bool is_prime(const mpz_class& n) {
  if (n < 2) return false;
  for (unsigned long w : kWitnesses) {
    if (n == w) return true;
    if (mpz_divisible_ui_p(n.get_mpz_t(), w)) return false;
  }
  if (n >= deterministic_limit()) return mpz_probab_prime_p(n.get_mpz_t(), 40) > 0;
  return std::all_of(kWitnesses.begin(), kWitnesses.end(),
                     [&](unsigned long b) { return miller_rabin(n, b); });
}

Factorization factorize(const mpz_class& n) {
  ZNEC_EXPECTS(n >= 2, "factorize requires n >= 2");
  std::vector<mpz_class> primes;
  mpz_class rest = n;
  for (unsigned long d = 2; d < 1000 && d * d <= rest; d += (d == 2 ? 1 : 2)) {
    while (mpz_divisible_ui_p(rest.get_mpz_t(), d)) {
      primes.emplace_back(d);
      rest /= d;
    }
  }
  factor_into(rest, primes);
  std::sort(primes.begin(), primes.end());
  Factorization out;
  for (const auto& p : primes) {
    if (!out.empty() && out.back().prime == p) {
      ++out.back().exponent;
    } else {
      out.push_back({p, 1});
    }
  }
  return out;
}

int legendre(const mpz_class& a, const mpz_class& p) {
  return mpz_legendre(a.get_mpz_t(), p.get_mpz_t());
}

std::optional<mpz_class> sqrt_mod_prime(const mpz_class& a_in, const mpz_class& p) {
  mpz_class a = a_in % p;
  if (a < 0) a += p;
  if (a == 0) return mpz_class(0);
  if (legendre(a, p) != 1) return std::nullopt;
  mpz_class r;
  if (mpz_fdiv_ui(p.get_mpz_t(), 4) == 3) {
    mpz_class e = (p + 1) / 4;
    mpz_powm(r.get_mpz_t(), a.get_mpz_t(), e.get_mpz_t(), p.get_mpz_t());
    return r;
  }
  mpz_class q = p - 1;
  unsigned long s = mpz_scan1(q.get_mpz_t(), 0);
  q >>= s;
  mpz_class z = 2;
  while (legendre(z, p) != -1) ++z;
  mpz_class c, t, e;
  mpz_powm(c.get_mpz_t(), z.get_mpz_t(), q.get_mpz_t(), p.get_mpz_t());
  e = (q + 1) / 2;
  mpz_powm(r.get_mpz_t(), a.get_mpz_t(), e.get_mpz_t(), p.get_mpz_t());
  mpz_powm(t.get_mpz_t(), a.get_mpz_t(), q.get_mpz_t(), p.get_mpz_t());
  unsigned long m = s;
  while (t != 1) {
    unsigned long i = 0;
    mpz_class t2 = t;
    while (t2 != 1) {
      t2 = (t2 * t2) % p;
      ++i;
    }
    mpz_class b = c;
    for (unsigned long j = 0; j + i + 1 < m; ++j) b = (b * b) % p;
    m = i;
    c = (b * b) % p;
    t = (t * c) % p;
    r = (r * b) % p;
  }
  return r;
}

// ---------------------------------------------------------------------------
// Modulus

std::shared_ptr<const Modulus::Data> Modulus::build(Factorization factors) {
  ZNEC_EXPECTS(!factors.empty(), "modulus needs at least one prime factor");
  auto data = std::make_shared<Data>();
  data->n = 1;
  data->radical = 1;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    const auto& f = factors[i];
    ZNEC_EXPECTS(f.exponent >= 1, "factorization exponents must be positive");
    ZNEC_EXPECTS(i == 0 || factors[i - 1].prime < f.prime,
                 "factorization must be sorted by strictly increasing prime");
    if (!is_prime(f.prime)) throw ContractViolation("factor " + f.prime.get_str() + " is not prime");
    mpz_class q = f.value();
    data->components.push_back(q);
    data->n *= q;
    data->radical *= f.prime;
  }
  for (const auto& q : data->components) {
    mpz_class rest = data->n / q;
    mpz_class inv;
    mpz_invert(inv.get_mpz_t(), rest.get_mpz_t(), q.get_mpz_t());
    data->idempotents.push_back((rest * inv) % data->n);
  }
  data->factors = std::move(factors);
  return data;
}

Modulus::Modulus(const mpz_class& n) : data_(build(factorize(n))) {}

Modulus::Modulus(Factorization factors) : data_(build(std::move(factors))) {}

Modulus Modulus::prime_power(const mpz_class& p, unsigned e) {
  return Modulus(Factorization{{p, e}});
}

const mpz_class& Modulus::prime() const {
  ZNEC_EXPECTS(is_prime_power(), "modulus is not a prime power");
  return data_->factors.front().prime;
}

unsigned Modulus::exponent() const {
  ZNEC_EXPECTS(is_prime_power(), "modulus is not a prime power");
  return data_->factors.front().exponent;
}

mpz_class Modulus::reduce(const mpz_class& x) const {
  mpz_class r;
  mpz_mod(r.get_mpz_t(), x.get_mpz_t(), data_->n.get_mpz_t());
  return r;
}

Residue Modulus::operator()(const mpz_class& x) const { return Residue(*this, x); }

Residue Modulus::operator()(long x) const { return Residue(*this, mpz_class(x)); }

mpz_class Modulus::glue(std::span<const mpz_class> parts) const {
  ZNEC_EXPECTS(parts.size() == data_->components.size(), "one part per component required");
  if (parts.size() == 1) return reduce(parts[0]);
  mpz_class acc = 0;
  for (std::size_t i = 0; i < parts.size(); ++i) acc += data_->idempotents[i] * parts[i];
  return reduce(acc);
}

Modulus Modulus::component(std::size_t index) const {
  ZNEC_EXPECTS(index < data_->factors.size(), "component index out of range");
  if (is_prime_power()) return *this;
  return Modulus(Factorization{data_->factors[index]});
}

// ---------------------------------------------------------------------------
// Residue

void Residue::check_same(const Residue& o) const {
  ZNEC_EXPECTS(modulus_ == o.modulus_, "arithmetic between residues of different moduli");
}

bool Residue::is_unit() const {
  mpz_class g = gcd(value_, modulus_.value());
  return g == 1;
}

Residue Residue::operator+(const Residue& o) const {
  check_same(o);
  mpz_class v = value_ + o.value_;
  if (v >= modulus_.value()) v -= modulus_.value();
  return Residue(modulus_, std::move(v), Reduced{});
}

Residue Residue::operator-(const Residue& o) const {
  check_same(o);
  mpz_class v = value_ - o.value_;
  if (v < 0) v += modulus_.value();
  return Residue(modulus_, std::move(v), Reduced{});
}

Residue Residue::operator*(const Residue& o) const {
  check_same(o);
  return Residue(modulus_, modulus_.reduce(value_ * o.value_), Reduced{});
}

Residue Residue::operator-() const {
  if (value_ == 0) return *this;
  return Residue(modulus_, modulus_.value() - value_, Reduced{});
}

Residue Residue::pow(const mpz_class& exponent) const {
  ZNEC_EXPECTS(exponent >= 0, "negative exponent; use inverse() first");
  mpz_class r;
  mpz_powm(r.get_mpz_t(), value_.get_mpz_t(), exponent.get_mpz_t(), modulus_.value().get_mpz_t());
  return Residue(modulus_, std::move(r), Reduced{});
}

Residue Residue::inverse() const {
  mpz_class inv;
  if (mpz_invert(inv.get_mpz_t(), value_.get_mpz_t(), modulus_.value().get_mpz_t()) == 0) {
    throw NonInvertible(gcd(value_, modulus_.value()));
  }
  return Residue(modulus_, std::move(inv), Reduced{});
}

Residue inverse(const Residue& x) { return x.inverse(); }

unsigned vp(const Residue& x, const mpz_class& p) {
  const Modulus& m = x.modulus();
  if (!m.is_prime_power()) throw ContractViolation("vp requires a prime-power modulus");
  ZNEC_EXPECTS(m.prime() == p, "vp prime does not match the modulus");
  if (x.is_zero()) return m.exponent();
  return static_cast<unsigned>(mpz_remove(mpz_class().get_mpz_t(), x.value().get_mpz_t(), p.get_mpz_t()));
}

Residue crt_combine(std::span<const Residue> residues) {
  ZNEC_EXPECTS(!residues.empty(), "crt_combine needs at least one residue");
  if (residues.size() == 1) return residues.front();
  Factorization merged;
  mpz_class value = 0;
  mpz_class modulus = 1;
  for (const auto& r : residues) {
    const mpz_class& m = r.modulus().value();
    if (gcd(modulus, m) != 1) {
      throw NotCoprime("moduli " + modulus.get_str() + " and " + m.get_str() + " are not coprime");
    }
    // value' = value + modulus * ((r - value) / modulus mod m)
    mpz_class inv;
    mpz_invert(inv.get_mpz_t(), modulus.get_mpz_t(), m.get_mpz_t());
    mpz_class t = ((r.value() - value) * inv) % m;
    if (t < 0) t += m;
    value += modulus * t;
    modulus *= m;
    merged.insert(merged.end(), r.modulus().factorization().begin(), r.modulus().factorization().end());
  }
  std::sort(merged.begin(), merged.end(),
            [](const PrimePower& a, const PrimePower& b) { return a.prime < b.prime; });
  return Residue(Modulus(std::move(merged)), value);
}

bool is_primitive(std::span<const mpz_class> values, const mpz_class& n) {
  mpz_class g = n;
  for (const auto& v : values) {
    g = gcd(g, v);
    if (g == 1) return true;
  }
  return g == 1;
}

bool is_primitive(std::span<const Residue> tuple) {
  ZNEC_EXPECTS(!tuple.empty(), "is_primitive needs a nonempty tuple");
  std::vector<mpz_class> values;
  values.reserve(tuple.size());
  for (const auto& r : tuple) {
    ZNEC_EXPECTS(r.modulus() == tuple.front().modulus(), "tuple mixes moduli");
    values.push_back(r.value());
  }
  return is_primitive(values, tuple.front().modulus().value());
}

// ---------------------------------------------------------------------------
// Matrices

Matrix::Matrix(Modulus modulus, std::size_t rows, std::size_t cols)
    : modulus_(std::move(modulus)), rows_(rows), cols_(cols), entries_(rows * cols) {
  ZNEC_EXPECTS(rows > 0 && cols > 0, "matrix must be nonempty");
}

Matrix::Matrix(Modulus modulus, const std::vector<std::vector<long>>& rows)
    : Matrix(std::move(modulus), rows.size(), rows.empty() ? 0 : rows.front().size()) {
  for (std::size_t r = 0; r < rows_; ++r) {
    ZNEC_EXPECTS(rows[r].size() == cols_, "ragged matrix rows");
    for (std::size_t c = 0; c < cols_; ++c) set(r, c, rows[r][c]);
  }
}

std::vector<mpz_class> Matrix::column(std::size_t c) const {
  std::vector<mpz_class> out;
  out.reserve(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out.push_back(at(r, c));
  return out;
}

std::vector<Residue> minor_ideal_generators(const Matrix& m, std::size_t t) {
  const Modulus& mod = m.modulus();
  if (t == 0) return {mod(1)};
  if (t > std::min(m.rows(), m.cols())) return {mod(0)};
  std::vector<Residue> out;
  for_each_subset(m.rows(), t, [&](const std::vector<std::size_t>& rs) {
    for_each_subset(m.cols(), t, [&](const std::vector<std::size_t>& cs) {
      std::vector<std::vector<mpz_class>> sub(t, std::vector<mpz_class>(t));
      for (std::size_t i = 0; i < t; ++i)
        for (std::size_t j = 0; j < t; ++j) sub[i][j] = m.at(rs[i], cs[j]);
      out.push_back(mod(integer_determinant(std::move(sub))));
    });
  });
  return out;
}

MinorIdealProfile minor_ideal_profile(const Matrix& m) {
  MinorIdealProfile profile{m.rows(), m.cols(), {}};
  for (std::size_t t = 0; t <= std::min(m.rows(), m.cols()); ++t) {
    profile.generators.push_back(minor_ideal_generators(m, t));
  }
  return profile;
}

std::size_t strong_rank(const Matrix& m) {
  std::size_t rank = 0;
  for (std::size_t t = 1; t <= std::min(m.rows(), m.cols()); ++t) {
    auto gens = minor_ideal_generators(m, t);
    if (std::none_of(gens.begin(), gens.end(), [](const Residue& r) { return !r.is_zero(); })) break;
    rank = t;
  }
  return rank;
}

std::vector<Residue> primitive_combination(const Matrix& m) {
  const Modulus& mod = m.modulus();
  // Over F_p a single column with a nonzero entry is already primitive, so
  // per prime it suffices to pick the first such column.
  std::vector<mpz_class> coeff(m.cols(), 0);
  const mpz_class& rad = mod.radical();
  for (const auto& f : mod.factorization()) {
    std::size_t chosen = m.cols();
    for (std::size_t c = 0; c < m.cols() && chosen == m.cols(); ++c) {
      for (std::size_t r = 0; r < m.rows(); ++r) {
        if (!mpz_divisible_p(m.at(r, c).get_mpz_t(), f.prime.get_mpz_t())) {
          chosen = c;
          break;
        }
      }
    }
    if (chosen == m.cols()) {
      throw NotPrimitive("matrix entries all vanish modulo " + f.prime.get_str());
    }
    // CRT idempotent modulo the radical: 1 mod p, 0 mod the other primes.
    mpz_class rest = rad / f.prime;
    mpz_class inv;
    mpz_invert(inv.get_mpz_t(), rest.get_mpz_t(), f.prime.get_mpz_t());
    coeff[chosen] += rest * inv;
  }
  std::vector<Residue> out;
  out.reserve(coeff.size());
  for (auto& c : coeff) out.push_back(mod(c % rad));
  return out;
}

}  // namespace znec
