#pragma once

// Exact spectral layer for circulants. The eigenvalue of Cay(Z_n; S) at index
// j is chi_j(S) = sum_{s in S} omega^{js}; deciding chi_j(S) = -1 is done in
// Z[x]/(Phi) and never through floating point.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "cdm/circulant.hpp"
#include "cdm/cyclotomic.hpp"
#include "cdm/labeling.hpp"
#include "cdm/rational.hpp"

namespace cdm {

namespace detail {

// omega^j is a primitive (n/g)-th root with g = gcd(j, n), and the exponents
// (j s mod n) are all multiples of g.
inline bool minus_one_at(const CirculantSpec& spec, Int j) {
  const Int n = spec.order();
  const Int g = std::gcd(j, n);
  std::vector<Int> exponents{0};
  for (Int s : spec.connection_set())
    exponents.push_back(static_cast<Int>((static_cast<__int128>(j) * s) % n) / g);
  return is_vanishing_sum(n / g, exponents);
}

}  // namespace detail

/// chi_j(S) = -1, decided exactly.
inline bool is_admissible(const CirculantSpec& spec, Int j) {
  if (j < 0 || j >= spec.order()) throw std::out_of_range("character index outside 0..n-1");
  return detail::minus_one_at(spec, j);
}

struct AdmissibleSet {
  Int n = 0;
  std::vector<Int> members;  // ascending

  bool empty() const { return members.empty(); }
  bool contains(Int j) const { return std::binary_search(members.begin(), members.end(), j); }
};

/// All admissible indices. chi_j(S) = -1 depends only on gcd(j, n), because
/// the indices sharing that gcd give Galois-conjugate character sums, so one
/// exact test is made per divisor of n.
inline AdmissibleSet admissible_set(const CirculantSpec& spec) {
  const Int n = spec.order();
  AdmissibleSet out{n, {}};
  std::vector<Int> good;
  for (Int g : divisors(n))
    if (g < n && detail::minus_one_at(spec, g)) good.push_back(g);
  if (good.empty()) return out;
  for (Int j = 1; j < n; ++j)
    if (std::binary_search(good.begin(), good.end(), std::gcd(j, n))) out.members.push_back(j);
  return out;
}

/// Floating approximation of chi_j(S). Display only.
inline double eigenvalue_approx(const CirculantSpec& spec, Int j) {
  const Int n = spec.order();
  double sum = 0.0;
  for (Int s : spec.connection_set()) {
    const auto k = static_cast<Int>((static_cast<__int128>(j) * s) % n);
    sum += std::cos(2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n));
  }
  return sum;
}

/// gcd(n, members of J); n for empty J. A value g > 1 means chi_j(0) =
/// chi_j(n/g) on every admissible j, which rules out a magic labeling.
inline Int separation_gcd(Int n, const AdmissibleSet& admissible) {
  Int g = n;
  for (Int j : admissible.members) g = std::gcd(g, j);
  return g;
}

enum class CharacterType { Type1, Type2, Type3Plus, Type3Minus };

inline const char* to_string(CharacterType t) {
  switch (t) {
    case CharacterType::Type1: return "Type1";
    case CharacterType::Type2: return "Type2";
    case CharacterType::Type3Plus: return "Type3Plus";
    case CharacterType::Type3Minus: return "Type3Minus";
  }
  return "?";
}

class CharacterTypeSet {
 public:
  void insert(CharacterType t) { bits_ |= bit(t); }
  bool contains(CharacterType t) const { return (bits_ & bit(t)) != 0; }
  bool empty() const { return bits_ == 0; }

  std::vector<CharacterType> members() const {
    std::vector<CharacterType> out;
    for (auto t : {CharacterType::Type1, CharacterType::Type2, CharacterType::Type3Plus, CharacterType::Type3Minus})
      if (contains(t)) out.push_back(t);
    return out;
  }

  std::string to_string(char sep = '|') const {
    std::string out;
    for (auto t : members()) {
      if (!out.empty()) out += sep;
      out += cdm::to_string(t);
    }
    return out;
  }

  friend bool operator==(const CharacterTypeSet&, const CharacterTypeSet&) = default;

 private:
  static unsigned bit(CharacterType t) { return 1u << static_cast<unsigned>(t); }
  unsigned bits_ = 0;
};

/// Congruence shapes of an admissible index for Cay(Z_n; {+-1, +-c, n/2}):
///  Type1:  j even, {j, jc} mod n = {n/2, n/4 or 3n/4}
///  Type2:  j even, j and jc both in {n/3, 2n/3} mod n
///  Type3+: j odd,  2j(c+1) = n mod 2n
///  Type3-: j odd,  2j(c-1) = n mod 2n
inline CharacterTypeSet classify_types(const CanonicalForm& canon, Int j) {
  const Int n = canon.n;
  const Int c = canon.c;
  if (!is_admissible(canonical_spec(n, c), j))
    throw std::invalid_argument("classify_types: index " + std::to_string(j) + " is not admissible");
  CharacterTypeSet out;
  const auto mulmod = [](Int a, Int b, Int m) { return static_cast<Int>((static_cast<__int128>(a) * b) % m); };
  if (j % 2 == 0) {
    const Int a = mod(j, n);
    const Int b = mulmod(j, c, n);
    if (n % 4 == 0) {
      const auto quarter = [&](Int v) { return v == n / 4 || v == 3 * n / 4; };
      if ((a == n / 2 && quarter(b)) || (b == n / 2 && quarter(a))) out.insert(CharacterType::Type1);
    }
    if (n % 3 == 0) {
      const auto third = [&](Int v) { return v == n / 3 || v == 2 * n / 3; };
      if (third(a) && third(b)) out.insert(CharacterType::Type2);
    }
  } else {
    if (mulmod(2 * j, c + 1, 2 * n) == n) out.insert(CharacterType::Type3Plus);
    if (mulmod(2 * j, c - 1, 2 * n) == n) out.insert(CharacterType::Type3Minus);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Rational solutions of cos(r1 pi) + cos(r2 pi) + cos(r3 pi) = 0.

struct RationalCosineTriple {
  Rational r1, r2, r3;

  RationalCosineTriple(Rational a, Rational b, Rational c) : r1(a), r2(b), r3(c) {
    if (!(Rational(0) <= r1 && r1 <= r2 && r2 <= r3 && r3 <= Rational(1)))
      throw std::invalid_argument("cosine triple must satisfy 0 <= r1 <= r2 <= r3 <= 1");
  }
};

struct CosineFamilies {
  bool family1 = false;      // r2 = 1/2, r3 = 1 - r1
  bool family2 = false;      // r1 <= 1/3, r2 = 2/3 - r1, r3 = 2/3 + r1
  bool exceptional = false;  // (1/5, 3/5, 2/3) or (1/3, 2/5, 4/5)

  bool empty() const { return !family1 && !family2 && !exceptional; }
  friend bool operator==(const CosineFamilies&, const CosineFamilies&) = default;
};

inline CosineFamilies classify_cosine_triple(const RationalCosineTriple& t) {
  const Rational half(1, 2), third(1, 3), two_thirds(2, 3);
  CosineFamilies out;
  out.family1 = t.r1 <= half && t.r2 == half && t.r3 == Rational(1) - t.r1;
  out.family2 = t.r1 <= third && t.r2 == two_thirds - t.r1 && t.r3 == two_thirds + t.r1;
  out.exceptional = (t.r1 == Rational(1, 5) && t.r2 == Rational(3, 5) && t.r3 == two_thirds) ||
                    (t.r1 == third && t.r2 == Rational(2, 5) && t.r3 == Rational(4, 5));
  return out;
}

/// Exact zero test of the cosine sum: with common denominator D, 2cos(a pi/D)
/// = zeta^a + zeta^-a for a primitive 2D-th root zeta.
inline bool cosine_sum_vanishes(const RationalCosineTriple& t) {
  const Int d = std::lcm(std::lcm(t.r1.den(), t.r2.den()), t.r3.den());
  std::vector<Int> exponents;
  for (const Rational& r : {t.r1, t.r2, t.r3}) {
    const Int a = r.num() * (d / r.den());
    exponents.push_back(a);
    exponents.push_back(-a);
  }
  return is_vanishing_sum(2 * d, exponents);
}

// ---------------------------------------------------------------------------
// Labelings as eigenvectors for -1.

/// v_x = l(x) - (n+1)/2.
inline std::vector<Rational> eigenvector_from_labeling(const Labeling& labeling) {
  const Rational shift(labeling.order() + 1, 2);
  std::vector<Rational> out;
  out.reserve(labeling.values().size());
  for (Int v : labeling.values()) out.push_back(Rational(v) - shift);
  return out;
}

/// (A + I) v = 0, evaluated exactly.
inline bool is_minus_one_eigenvector(const CirculantSpec& spec, const std::vector<Rational>& v) {
  const Int n = spec.order();
  if (static_cast<Int>(v.size()) != n) throw std::invalid_argument("vector length differs from graph order");
  for (Int x = 0; x < n; ++x) {
    Rational sum = v[static_cast<std::size_t>(x)];
    for (Int s : spec.connection_set()) sum += v[static_cast<std::size_t>((x + s) % n)];
    if (sum != Rational(0)) return false;
  }
  return true;
}

}  // namespace cdm
