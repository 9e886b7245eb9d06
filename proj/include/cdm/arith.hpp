#pragma once

// Exact integer helpers: 2-adic and p-adic splitting, unit groups, and the
// odd-part bookkeeping for a canonical valency-5 connector.

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace cdm {

using Int = std::int64_t;

struct TwoAdicSplit {
  int t = 0;    // exponent of 2
  Int odd = 1;  // odd cofactor

  constexpr Int value() const { return (Int{1} << t) * odd; }
  friend constexpr bool operator==(const TwoAdicSplit&, const TwoAdicSplit&) = default;
};

constexpr TwoAdicSplit two_adic_split(Int m) {
  if (m < 1) throw std::invalid_argument("two_adic_split: argument must be positive");
  TwoAdicSplit out{0, m};
  while ((out.odd & 1) == 0) {
    out.odd >>= 1;
    ++out.t;
  }
  return out;
}

// Trial division; values stay desk-scale.
constexpr bool is_prime(Int p) {
  if (p < 2) return false;
  if (p < 4) return true;
  if (p % 2 == 0 || p % 3 == 0) return false;
  for (Int d = 5; d * d <= p; d += 6)
    if (p % d == 0 || p % (d + 2) == 0) return false;
  return true;
}

/// Largest power of the prime `p` dividing `m`.
constexpr Int p_part(Int m, Int p) {
  if (m < 1) throw std::invalid_argument("p_part: m must be positive");
  if (!is_prime(p)) throw std::invalid_argument("p_part: p must be prime");
  Int part = 1;
  while (m % p == 0) {
    m /= p;
    part *= p;
  }
  return part;
}

/// Residues in 1..n-1 coprime to n, ascending. Empty for n = 1.
inline std::vector<Int> units(Int n) {
  if (n < 1) throw std::invalid_argument("units: modulus must be positive");
  std::vector<Int> out;
  for (Int q = 1; q < n; ++q)
    if (std::gcd(q, n) == 1) out.push_back(q);
  return out;
}

constexpr Int mod(Int a, Int n) {
  Int r = a % n;
  return r < 0 ? r + n : r;
}

/// Divisors of n in ascending order.
inline std::vector<Int> divisors(Int n) {
  std::vector<Int> lo, hi;
  for (Int d = 1; d * d <= n; ++d) {
    if (n % d != 0) continue;
    lo.push_back(d);
    if (d != n / d) hi.push_back(n / d);
  }
  lo.insert(lo.end(), hi.rbegin(), hi.rend());
  return lo;
}

/// Odd-part bookkeeping for the pair (n, c) with n = 2^t ell,
/// c + 1 = 2^alpha ell1, c - 1 = 2^beta ell2, d_i = gcd(ell, ell_i),
/// ell = d_i n_i and ell_i = d_i m_i.
struct DecompositionWitness {
  Int n = 0;
  Int c = 0;
  int t = 0;
  Int ell = 0;
  int alpha = 0;
  Int ell1 = 0;
  int beta = 0;
  Int ell2 = 0;
  Int d1 = 0, d2 = 0;
  Int n1 = 0, n2 = 0;
  Int m1 = 0, m2 = 0;

  friend bool operator==(const DecompositionWitness&, const DecompositionWitness&) = default;
};

inline DecompositionWitness decomposition_witness(Int n, Int c) {
  if (n < 6 || n % 2 != 0) throw std::invalid_argument("decomposition_witness: n must be even and >= 6");
  if (c <= 1 || 2 * c >= n) throw std::invalid_argument("decomposition_witness: need 1 < c < n/2");
  DecompositionWitness w;
  w.n = n;
  w.c = c;
  const auto sn = two_adic_split(n);
  const auto sp = two_adic_split(c + 1);
  const auto sm = two_adic_split(c - 1);
  w.t = sn.t;
  w.ell = sn.odd;
  w.alpha = sp.t;
  w.ell1 = sp.odd;
  w.beta = sm.t;
  w.ell2 = sm.odd;
  w.d1 = std::gcd(w.ell, w.ell1);
  w.d2 = std::gcd(w.ell, w.ell2);
  w.n1 = w.ell / w.d1;
  w.n2 = w.ell / w.d2;
  w.m1 = w.ell1 / w.d1;
  w.m2 = w.ell2 / w.d2;
  return w;
}

}  // namespace cdm
