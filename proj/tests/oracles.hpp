#pragma once

// Independent reference implementations used only by the tests. None of them
// touch the library's group law, enumeration or structure code.

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <tuple>
#include <vector>

namespace oracle {

using i64 = std::int64_t;

inline i64 mod(i64 a, i64 n) {
  a %= n;
  return a < 0 ? a + n : a;
}

inline i64 gcd(i64 a, i64 b) { return std::gcd(a, b); }

// Extended Euclid: x with a * x = 1 mod n, if any.
inline std::optional<i64> inverse(i64 a, i64 n) {
  i64 r0 = n, r1 = mod(a, n), s0 = 0, s1 = 1;
  while (r1 != 0) {
    const i64 q = r0 / r1;
    std::tie(r0, r1) = std::pair{r1, r0 - q * r1};
    std::tie(s0, s1) = std::pair{s1, s0 - q * s1};
  }
  if (r0 != 1) return std::nullopt;
  return mod(s0, n);
}

inline bool is_prime(i64 n) {
  if (n < 2) return false;
  for (i64 d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline i64 powmod(i64 b, i64 e, i64 n) {
  i64 r = 1 % n;
  b = mod(b, n);
  while (e > 0) {
    if (e & 1) r = static_cast<i64>(static_cast<__int128>(r) * b % n);
    b = static_cast<i64>(static_cast<__int128>(b) * b % n);
    e >>= 1;
  }
  return r;
}

// Euler's criterion.
inline int legendre(i64 a, i64 p) {
  a = mod(a, p);
  if (a == 0) return 0;
  return powmod(a, (p - 1) / 2, p) == 1 ? 1 : -1;
}

// |E_{A,B}(F_p)| = 1 + sum_x (1 + (x^3 + Ax + B | p)).
inline i64 count_points(i64 a, i64 b, i64 p) {
  i64 n = 1;
  for (i64 x = 0; x < p; ++x) n += 1 + legendre(x * x * x + a * x + b, p);
  return n;
}

// Affine chord-tangent law over F_p; nullopt stands for O.
using Affine = std::optional<std::pair<i64, i64>>;

inline Affine affine_add(const Affine& P, const Affine& Q, i64 a, i64 p) {
  if (!P) return Q;
  if (!Q) return P;
  const auto [x1, y1] = *P;
  const auto [x2, y2] = *Q;
  i64 lambda;
  if (x1 == x2) {
    if (mod(y1 + y2, p) == 0) return std::nullopt;
    lambda = mod((3 * x1 * x1 + a) % p * *inverse(2 * y1, p), p);
  } else {
    lambda = mod((y2 - y1) * *inverse(x2 - x1, p), p);
  }
  const i64 x3 = mod(lambda * lambda - x1 - x2, p);
  const i64 y3 = mod(lambda * (x1 - x3) - y1, p);
  return std::pair{x3, y3};
}

inline std::vector<Affine> affine_points(i64 a, i64 b, i64 p) {
  std::vector<Affine> out{std::nullopt};
  for (i64 x = 0; x < p; ++x)
    for (i64 y = 0; y < p; ++y)
      if (mod(y * y - x * x * x - a * x - b, p) == 0) out.push_back(std::pair{x, y});
  return out;
}

// Canonical projective representative by brute force: among all unit
// multiples of a primitive triple, the lexicographically smallest.
using Triple = std::array<i64, 3>;

inline Triple smallest_multiple(const Triple& t, i64 n) {
  Triple best{n, n, n};
  for (i64 u = 1; u < n; ++u) {
    if (gcd(u, n) != 1) continue;
    const Triple c{mod(u * t[0], n), mod(u * t[1], n), mod(u * t[2], n)};
    if (c < best) best = c;
  }
  return best;
}

// Every point of Y^2 Z = X^3 + A X Z^2 + B Z^3 over Z/NZ, one
// representative per unit class, by scanning all primitive triples.
inline std::set<Triple> scan_points(i64 a, i64 b, i64 n) {
  std::set<Triple> out;
  for (i64 x = 0; x < n; ++x)
    for (i64 y = 0; y < n; ++y)
      for (i64 z = 0; z < n; ++z) {
        if (gcd(gcd(x, y), gcd(z, n)) != 1) continue;
        const i64 lhs = mod(y * y % n * z, n);
        const i64 rhs = mod(x * x % n * x + a * x % n * z % n * z + b * z % n * z % n * z, n);
        if (lhs == rhs) out.insert(smallest_multiple({x, y, z}, n));
      }
  return out;
}

// Determinant over Z by cofactor expansion.
inline i64 det(const std::vector<std::vector<i64>>& m) {
  const std::size_t k = m.size();
  if (k == 0) return 1;
  if (k == 1) return m[0][0];
  i64 d = 0;
  for (std::size_t c = 0; c < k; ++c) {
    std::vector<std::vector<i64>> sub;
    for (std::size_t r = 1; r < k; ++r) {
      std::vector<i64> row;
      for (std::size_t j = 0; j < k; ++j)
        if (j != c) row.push_back(m[r][j]);
      sub.push_back(row);
    }
    d += (c % 2 ? -1 : 1) * m[0][c] * det(sub);
  }
  return d;
}

// Largest t with some nonzero t x t minor mod n.
inline std::size_t strong_rank(const std::vector<std::vector<i64>>& m, i64 n) {
  const std::size_t rows = m.size(), cols = m.empty() ? 0 : m[0].size();
  std::size_t best = 0;
  for (std::size_t t = 1; t <= std::min(rows, cols); ++t) {
    // Enumerate row and column subsets by bitmask.
    for (unsigned rm = 0; rm < (1u << rows); ++rm) {
      if (static_cast<std::size_t>(__builtin_popcount(rm)) != t) continue;
      for (unsigned cm = 0; cm < (1u << cols); ++cm) {
        if (static_cast<std::size_t>(__builtin_popcount(cm)) != t) continue;
        std::vector<std::vector<i64>> sub;
        for (std::size_t r = 0; r < rows; ++r) {
          if (!(rm >> r & 1)) continue;
          std::vector<i64> row;
          for (std::size_t c = 0; c < cols; ++c)
            if (cm >> c & 1) row.push_back(m[r][c]);
          sub.push_back(row);
        }
        if (mod(det(sub), n) != 0) best = t;
      }
    }
  }
  return best;
}

// Invariant factors of a finite abelian group given by its element-order
// census: for every prime power l^k, |G[l^k]| = #{g : l^k g = 0}.
inline std::vector<i64> invariant_factors_from_kernels(const std::map<i64, std::vector<i64>>& kernel_logs) {
  // kernel_logs[l] = {log_l |G[l]|, log_l |G[l^2]|, ...} up to the full l-part.
  std::map<i64, std::vector<int>> exps;
  for (const auto& [l, logs] : kernel_logs) {
    i64 prev = 0;
    std::vector<i64> at_least;
    for (i64 v : logs) {
      at_least.push_back(v - prev);
      prev = v;
    }
    for (std::size_t k = 0; k < at_least.size(); ++k) {
      const i64 next = k + 1 < at_least.size() ? at_least[k + 1] : 0;
      for (i64 r = 0; r < at_least[k] - next; ++r) exps[l].push_back(static_cast<int>(k + 1));
    }
  }
  std::size_t len = 0;
  for (auto& [l, e] : exps) {
    std::sort(e.rbegin(), e.rend());
    len = std::max(len, e.size());
  }
  std::vector<i64> out(len, 1);
  for (const auto& [l, e] : exps)
    for (std::size_t i = 0; i < e.size(); ++i)
      for (int j = 0; j < e[i]; ++j) out[i] *= l;
  std::reverse(out.begin(), out.end());
  return out;
}

}  // namespace oracle
