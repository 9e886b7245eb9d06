#pragma once

// Integer polynomials, cyclotomic polynomials, and exact arithmetic in
// Z[x]/(Phi_n), i.e. in Z[omega] for a primitive n-th root of unity omega.

#include <map>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "cdm/arith.hpp"

namespace cdm {

/// Dense integer polynomial, coefficient i multiplies x^i. Trailing zeros are
/// trimmed by every operation below, so the zero polynomial is empty.
using Poly = std::vector<Int>;

namespace detail {

inline Int checked_add(Int a, Int b) {
  Int r;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("polynomial coefficient overflow");
  return r;
}

inline Int checked_mul(Int a, Int b) {
  Int r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("polynomial coefficient overflow");
  return r;
}

inline void trim(Poly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

}  // namespace detail

inline Poly poly_mul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j)
      out[i + j] = detail::checked_add(out[i + j], detail::checked_mul(a[i], b[j]));
  }
  detail::trim(out);
  return out;
}

/// In-place remainder of `p` modulo the monic polynomial `divisor`; returns
/// the quotient. Only the nonzero terms of the divisor are touched per step.
inline Poly poly_reduce_monic(Poly& p, const Poly& divisor) {
  if (divisor.empty() || divisor.back() != 1) throw std::invalid_argument("divisor must be monic");
  detail::trim(p);
  const std::size_t deg = divisor.size() - 1;
  if (p.size() <= deg) return {};
  std::vector<std::pair<std::size_t, Int>> terms;
  for (std::size_t i = 0; i < deg; ++i)
    if (divisor[i] != 0) terms.emplace_back(i, divisor[i]);
  Poly quotient(p.size() - deg, 0);
  for (std::size_t k = p.size() - 1; k >= deg; --k) {
    const Int lead = p[k];
    if (lead != 0) {
      quotient[k - deg] = lead;
      for (const auto& [i, coef] : terms)
        p[k - deg + i] = detail::checked_add(p[k - deg + i], -detail::checked_mul(lead, coef));
      p[k] = 0;
    }
    if (k == deg) break;
  }
  detail::trim(p);
  detail::trim(quotient);
  return quotient;
}

/// Exact quotient by a monic divisor; throws if the remainder is nonzero.
inline Poly poly_exact_div(Poly p, const Poly& divisor) {
  Poly q = poly_reduce_monic(p, divisor);
  if (!p.empty()) throw std::logic_error("polynomial division was not exact");
  return q;
}

/// p(x^k).
inline Poly poly_compose_power(const Poly& p, Int k) {
  if (p.empty()) return {};
  Poly out((p.size() - 1) * static_cast<std::size_t>(k) + 1, 0);
  for (std::size_t i = 0; i < p.size(); ++i) out[i * static_cast<std::size_t>(k)] = p[i];
  return out;
}

namespace detail {

inline std::vector<Int> prime_factors(Int n) {
  std::vector<Int> out;
  for (Int p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    out.push_back(p);
    while (n % p == 0) n /= p;
  }
  if (n > 1) out.push_back(n);
  return out;
}

inline Poly build_cyclotomic(Int n) {
  // Phi_{m p}(x) = Phi_m(x^p) / Phi_m(x) for p not dividing m builds the
  // squarefree kernel; Phi_n(x) = Phi_rad(x^{n/rad}) finishes.
  Poly phi{-1, 1};
  Int rad = 1;
  for (Int p : prime_factors(n)) {
    phi = poly_exact_div(poly_compose_power(phi, p), phi);
    rad *= p;
  }
  return poly_compose_power(phi, n / rad);
}

}  // namespace detail

/// Phi_n, monic of degree phi(n). Cached per n; safe to call concurrently.
inline const Poly& cyclotomic_poly(Int n) {
  if (n < 1) throw std::invalid_argument("cyclotomic_poly: conductor must be positive");
  static std::shared_mutex mutex;
  static std::map<Int, std::unique_ptr<const Poly>> cache;
  {
    std::shared_lock lock(mutex);
    if (auto it = cache.find(n); it != cache.end()) return *it->second;
  }
  auto built = std::make_unique<const Poly>(detail::build_cyclotomic(n));
  std::unique_lock lock(mutex);
  auto [it, inserted] = cache.try_emplace(n, std::move(built));
  return *it->second;
}

/// Element of Z[x]/(Phi_n), stored as its unique remainder of degree < phi(n).
class CyclotomicResidue {
 public:
  explicit CyclotomicResidue(Int n) : n_(n), coeffs_(degree_of(n), 0) {}

  /// Residue of an arbitrary integer polynomial.
  CyclotomicResidue(Int n, Poly p) : n_(n) {
    poly_reduce_monic(p, cyclotomic_poly(n));
    p.resize(degree_of(n), 0);
    coeffs_ = std::move(p);
  }

  /// Residue of sum_i omega^{e_i}; exponents may be any integers.
  static CyclotomicResidue from_exponents(Int n, std::span<const Int> exponents) {
    Poly p(static_cast<std::size_t>(n), 0);
    for (Int e : exponents) ++p[static_cast<std::size_t>(mod(e, n))];
    return CyclotomicResidue(n, std::move(p));
  }

  static CyclotomicResidue monomial(Int n, Int e) {
    const Int one[] = {e};
    return from_exponents(n, one);
  }

  Int conductor() const { return n_; }
  const Poly& coefficients() const { return coeffs_; }

  bool is_zero() const {
    for (Int c : coeffs_)
      if (c != 0) return false;
    return true;
  }

  friend CyclotomicResidue operator+(const CyclotomicResidue& a, const CyclotomicResidue& b) {
    a.check_same(b);
    CyclotomicResidue out(a.n_);
    for (std::size_t i = 0; i < out.coeffs_.size(); ++i) out.coeffs_[i] = detail::checked_add(a.coeffs_[i], b.coeffs_[i]);
    return out;
  }

  friend CyclotomicResidue operator-(const CyclotomicResidue& a, const CyclotomicResidue& b) {
    a.check_same(b);
    CyclotomicResidue out(a.n_);
    for (std::size_t i = 0; i < out.coeffs_.size(); ++i) out.coeffs_[i] = detail::checked_add(a.coeffs_[i], -b.coeffs_[i]);
    return out;
  }

  friend CyclotomicResidue operator*(const CyclotomicResidue& a, const CyclotomicResidue& b) {
    a.check_same(b);
    return CyclotomicResidue(a.n_, poly_mul(a.coeffs_, b.coeffs_));
  }

  friend bool operator==(const CyclotomicResidue&, const CyclotomicResidue&) = default;

 private:
  static std::size_t degree_of(Int n) { return cyclotomic_poly(n).size() - 1; }

  void check_same(const CyclotomicResidue& o) const {
    if (n_ != o.n_) throw std::invalid_argument("cyclotomic residues with different conductors");
  }

  Int n_;
  Poly coeffs_;
};

/// True iff sum_i zeta^{e_i} = 0 for a primitive m-th root of unity zeta.
inline bool is_vanishing_sum(Int m, std::span<const Int> exponents) {
  return CyclotomicResidue::from_exponents(m, exponents).is_zero();
}

}  // namespace cdm
