#pragma once

// Closed distance magic decision for connected circulants of valency <= 5.
// Valency 1..4: only K2, K3, K4, K5. Valency 5: the graph must be
// multiplier-equivalent to Cay(Z_n; {+-1, +-c, n/2}) with (n, c) in one of
// four arithmetic families.

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cdm/arith.hpp"
#include "cdm/circulant.hpp"
#include "cdm/spectral.hpp"

namespace cdm {

enum class Family { K2, K3, K4, K5, FamilyI, FamilyII, FamilyIII, FamilyIV };

inline const char* to_string(Family f) {
  switch (f) {
    case Family::K2: return "K2";
    case Family::K3: return "K3";
    case Family::K4: return "K4";
    case Family::K5: return "K5";
    case Family::FamilyI: return "FamilyI";
    case Family::FamilyII: return "FamilyII";
    case Family::FamilyIII: return "FamilyIII";
    case Family::FamilyIV: return "FamilyIV";
  }
  return "?";
}

enum class NegativeReason {
  None,
  Disconnected,
  NoCoprimeGenerator,
  ParityInfeasible,
  NoAdmissibleCharacter,
  SeparationGcd,
  PredicateFailure,
};

inline const char* to_string(NegativeReason r) {
  switch (r) {
    case NegativeReason::None: return "";
    case NegativeReason::Disconnected: return "disconnected";
    case NegativeReason::NoCoprimeGenerator: return "no-coprime-generator";
    case NegativeReason::ParityInfeasible: return "parity-infeasible";
    case NegativeReason::NoAdmissibleCharacter: return "no-admissible-character";
    case NegativeReason::SeparationGcd: return "separation-gcd";
    case NegativeReason::PredicateFailure: return "predicate-failure";
  }
  return "?";
}

class UnsupportedValency : public std::invalid_argument {
 public:
  explicit UnsupportedValency(Int valency)
      : std::invalid_argument("valency " + std::to_string(valency) + " is not supported (at most 5)") {}
};

/// Exponent pair for families (iii) and (iv).
struct FamilyParameters {
  int t = 0;
  Int k = 0;
  friend bool operator==(const FamilyParameters&, const FamilyParameters&) = default;
};

struct FamilyMatch {
  Family family = Family::FamilyI;
  Int c = 0;           // canonical connector; 0 for complete graphs
  Int multiplier = 1;  // unit q with q*S = {+-1, +-c, n/2}
  std::optional<FamilyParameters> parameters;
};

struct ClassificationResult {
  bool is_cdm = false;
  std::vector<FamilyMatch> matches;  // every (representative, family) hit
  std::optional<DecompositionWitness> witness;
  NegativeReason reason = NegativeReason::None;
  std::string detail;

  std::vector<Family> families() const {
    std::vector<Family> out;
    for (const auto& m : matches)
      if (std::find(out.begin(), out.end(), m.family) == out.end()) out.push_back(m.family);
    std::sort(out.begin(), out.end());
    return out;
  }

  bool has(Family f) const {
    return std::any_of(matches.begin(), matches.end(), [f](const FamilyMatch& m) { return m.family == f; });
  }

  /// Preferred match: the first in family order, smallest c within a family.
  const FamilyMatch* primary() const { return matches.empty() ? nullptr : &matches.front(); }
};

namespace detail {

inline void check_canonical_pair(Int n, Int c) {
  if (n < 6 || n % 2 != 0) throw std::invalid_argument("family predicate: n must be even and at least 6");
  if (c <= 1 || 2 * c >= n) throw std::invalid_argument("family predicate: need 1 < c < n/2");
}

// (t, k) with n = 3 2^t base, c = 2^{t-1} base + offset, base = 6k + sign(t),
// where sign(t) = (-1)^t for family (iii) and -(-1)^t for family (iv).
inline std::optional<FamilyParameters> scan_family(Int n, Int c, int parity_sign, Int offset) {
  check_canonical_pair(n, c);
  for (int t = 2; 3 * (Int{1} << t) <= n; ++t) {
    const Int pow2 = Int{1} << t;
    const Int sign = (t % 2 == 0 ? 1 : -1) * parity_sign;
    const Int k_max = n / (18 * pow2) + 1;
    for (Int k = 0; k <= k_max; ++k) {
      const Int base = 6 * k + sign;
      if (base <= 0) continue;
      if (3 * pow2 * base != n) continue;
      const Int cc = (pow2 / 2) * base + offset;
      if (cc == c && cc >= 2) return FamilyParameters{t, k};
    }
  }
  return std::nullopt;
}

}  // namespace detail

inline bool check_family_i(Int n, Int c) {
  detail::check_canonical_pair(n, c);
  return c == n / 2 - 1;
}

inline bool check_family_ii(Int n, Int c) {
  detail::check_canonical_pair(n, c);
  if (n % 4 != 2 || c % 2 != 0) return false;
  const __int128 twice = 2 * (static_cast<__int128>(c) * c - 1);
  if (twice % n != 0) return false;
  return (twice / n) % 2 == 1;
}

inline std::optional<FamilyParameters> check_family_iii(Int n, Int c) { return detail::scan_family(n, c, 1, -1); }

inline std::optional<FamilyParameters> check_family_iv(Int n, Int c) { return detail::scan_family(n, c, -1, +1); }

/// All family hits for the canonical pair (n, c).
inline std::vector<FamilyMatch> match_families(Int n, Int c, Int multiplier = 1) {
  std::vector<FamilyMatch> out;
  if (check_family_i(n, c)) out.push_back({Family::FamilyI, c, multiplier, std::nullopt});
  if (check_family_ii(n, c)) out.push_back({Family::FamilyII, c, multiplier, std::nullopt});
  if (auto p = check_family_iii(n, c)) out.push_back({Family::FamilyIII, c, multiplier, p});
  if (auto p = check_family_iv(n, c)) out.push_back({Family::FamilyIV, c, multiplier, p});
  return out;
}

/// Orders above this skip the spectral explanation of a negative verdict.
inline constexpr Int kSpectralReasonLimit = 20000;

namespace detail {

inline bool spectral_reason(const CirculantSpec& spec, ClassificationResult& out) {
  if (spec.order() > kSpectralReasonLimit) return false;
  const auto admissible = admissible_set(spec);
  if (admissible.empty()) {
    out.reason = NegativeReason::NoAdmissibleCharacter;
    out.detail = "-1 is not an eigenvalue";
    return true;
  }
  if (const Int g = separation_gcd(spec.order(), admissible); g > 1) {
    out.reason = NegativeReason::SeparationGcd;
    out.detail = "every admissible index is divisible by " + std::to_string(g);
    return true;
  }
  return false;
}

}  // namespace detail

inline ClassificationResult classify(const CirculantSpec& spec) {
  const Int n = spec.order();
  const Int valency = spec.valency();
  if (valency > 5) throw UnsupportedValency(valency);

  ClassificationResult out;
  if (!spec.is_connected()) {
    out.reason = NegativeReason::Disconnected;
    out.detail = "connection set does not generate Z_" + std::to_string(n);
    return out;
  }

  if (valency <= 4) {
    // A connected circulant of valency k on k+1 vertices is K_{k+1}.
    static constexpr Family complete[] = {Family::K2, Family::K2, Family::K3, Family::K4, Family::K5};
    if (n == valency + 1) {
      out.is_cdm = true;
      out.matches.push_back({complete[valency], 0, 1, std::nullopt});
      return out;
    }
    if (!closed_magic_constant(n, valency)) {
      out.reason = NegativeReason::ParityInfeasible;
      out.detail = "(k+1)(n+1) is odd";
      return out;
    }
    if (!detail::spectral_reason(spec, out)) {
      out.reason = NegativeReason::PredicateFailure;
      out.detail = "not a complete graph";
    }
    return out;
  }

  const auto forms = canonical_forms_valency5(spec);
  if (forms.empty()) {
    out.reason = NegativeReason::NoCoprimeGenerator;
    out.detail = "no generator pair is coprime to n";
    return out;
  }
  for (const auto& f : forms) {
    auto hits = match_families(f.n, f.c, f.multiplier);
    out.matches.insert(out.matches.end(), hits.begin(), hits.end());
  }
  std::stable_sort(out.matches.begin(), out.matches.end(),
                   [](const FamilyMatch& a, const FamilyMatch& b) { return a.family < b.family; });
  if (!out.matches.empty()) {
    out.is_cdm = true;
    out.witness = decomposition_witness(n, out.matches.front().c);
    return out;
  }
  if (!detail::spectral_reason(spec, out)) {
    out.reason = NegativeReason::PredicateFailure;
    std::string cs;
    for (const auto& f : forms) cs += (cs.empty() ? "" : ",") + std::to_string(f.c);
    out.detail = "canonical c in {" + cs + "} matches no family";
  }
  return out;
}

}  // namespace cdm
