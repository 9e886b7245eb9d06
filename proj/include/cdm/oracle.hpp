#pragma once

// Exhaustive backtracking decision of the closed distance magic property for
// small circulants. It shares no code with the classifier and serves as the
// ground truth that the classification predicates are checked against.

#include <chrono>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cdm/circulant.hpp"
#include "cdm/labeling.hpp"
#include "cdm/linear.hpp"
#include "cdm/spectral.hpp"

namespace cdm {

enum class SearchStatus { Found, Infeasible, Timeout };

inline const char* to_string(SearchStatus s) {
  switch (s) {
    case SearchStatus::Found: return "Found";
    case SearchStatus::Infeasible: return "Infeasible";
    case SearchStatus::Timeout: return "Timeout";
  }
  return "?";
}

struct Refusal {
  enum class Kind { NoMinusOneEigenvalue, SeparationGcd, ParityInfeasible };
  Kind kind;
  Int gcd = 0;  // for SeparationGcd

  std::string to_string() const {
    switch (kind) {
      case Kind::NoMinusOneEigenvalue: return "NoMinusOneEigenvalue";
      case Kind::SeparationGcd: return "SeparationGcd(" + std::to_string(gcd) + ")";
      case Kind::ParityInfeasible: return "ParityInfeasible";
    }
    return "?";
  }
  friend bool operator==(const Refusal&, const Refusal&) = default;
};

struct SearchOutcome {
  SearchStatus status = SearchStatus::Infeasible;
  std::optional<Labeling> labeling;
  std::optional<Refusal> refusal;  // set when a necessary condition answered without search
  std::uint64_t nodes_explored = 0;
  std::chrono::milliseconds elapsed{0};
};

struct OracleOptions {
  Int max_n = 30;
  bool use_prefilter = true;
};

/// Necessary conditions: integral magic constant, -1 in the spectrum, and no
/// pair 0, n/g with g > 1 that every (-1)-eigenvector must label equally.
inline std::optional<Refusal> spectral_prefilter(const CirculantSpec& spec) {
  if (!closed_magic_constant(spec.order(), spec.valency())) return Refusal{Refusal::Kind::ParityInfeasible};
  const auto admissible = admissible_set(spec);
  if (admissible.empty()) return Refusal{Refusal::Kind::NoMinusOneEigenvalue};
  if (const Int g = separation_gcd(spec.order(), admissible); g > 1) return Refusal{Refusal::Kind::SeparationGcd, g};
  return std::nullopt;
}

namespace detail {

struct LinearConstraint : LinearEquation {
  bool unit = false;  // a closed-sum row, all coefficients 1
};

// The closed-sum equations (A + I) l = r 1, followed by the rows of their
// reduced row echelon form. Each reduced row ties one pivot label to free
// labels only, so it closes as soon as those are set.
inline std::vector<LinearConstraint> magic_constraints(const CirculantSpec& spec, Int r) {
  std::vector<LinearEquation> closed;
  for (Int x = 0; x < spec.order(); ++x) {
    LinearEquation eq;
    eq.rhs = r;
    for (Vertex y : spec.closed_neighborhood(Vertex{x})) eq.terms.emplace_back(y.get(), 1);
    closed.push_back(std::move(eq));
  }
  std::vector<LinearConstraint> out;
  for (const auto& eq : closed) out.push_back({eq, true});
  for (auto& eq : reduced_row_echelon(closed, spec.order())) out.push_back({std::move(eq), false});
  return out;
}

// Fixed labeling order starting at vertex 0: each next vertex is the one
// whose constraints are closest to closing (fewest open labels, then most such
// constraints, then smallest index). Depends on the graph only.
inline std::vector<Int> search_order(Int n, const std::vector<LinearConstraint>& cons,
                                     const std::vector<std::vector<std::pair<Int, Int>>>& touching) {
  std::vector<Int> open(cons.size()), order;
  std::vector<bool> placed(static_cast<std::size_t>(n), false);
  for (std::size_t i = 0; i < cons.size(); ++i) open[i] = static_cast<Int>(cons[i].terms.size());
  const auto place = [&](Int x) {
    placed[static_cast<std::size_t>(x)] = true;
    order.push_back(x);
    for (const auto& [ci, a] : touching[static_cast<std::size_t>(x)]) --open[static_cast<std::size_t>(ci)];
  };
  place(0);
  while (static_cast<Int>(order.size()) < n) {
    Int best = -1, best_open = 0, best_count = 0;
    for (Int x = 0; x < n; ++x) {
      if (placed[static_cast<std::size_t>(x)]) continue;
      Int min_open = n + 2, count = 0;
      for (const auto& [ci, a] : touching[static_cast<std::size_t>(x)]) {
        const Int o = open[static_cast<std::size_t>(ci)];
        if (o < min_open) {
          min_open = o;
          count = 0;
        }
        if (o == min_open) ++count;
      }
      if (best < 0 || min_open < best_open || (min_open == best_open && count > best_count)) {
        best = x;
        best_open = min_open;
        best_count = count;
      }
    }
    place(best);
  }
  return order;
}

// Labels vertices in the fixed order above. Each constraint keeps its partial
// sum and open count; a constraint with one open label dictates it, and one
// with several open labels must stay reachable with the labels still free.
class MagicSearch {
 public:
  MagicSearch(const CirculantSpec& spec, Int r, std::chrono::steady_clock::time_point deadline)
      : n_(spec.order()), deadline_(deadline), cons_(magic_constraints(spec, r)) {
    touching_.assign(static_cast<std::size_t>(n_), {});
    for (std::size_t i = 0; i < cons_.size(); ++i)
      for (const auto& [x, a] : cons_[i].terms) touching_[static_cast<std::size_t>(x)].emplace_back(static_cast<Int>(i), a);
    order_ = search_order(n_, cons_, touching_);
    label_.assign(static_cast<std::size_t>(n_), 0);
    used_.assign(static_cast<std::size_t>(n_ + 1), false);
    partial_.assign(cons_.size(), 0);
    open_.resize(cons_.size());
    for (std::size_t i = 0; i < cons_.size(); ++i) open_[i] = static_cast<Int>(cons_[i].terms.size());
  }

  /// nullopt when the tree is exhausted or the deadline passed (see timed_out).
  std::optional<std::vector<Int>> run() {
    // Rotations are automorphisms, so the vertex carrying label 1 may be 0.
    const bool ok = place(0, 1) && dfs(1);
    if (ok) return label_;
    return std::nullopt;
  }

  std::uint64_t nodes() const { return nodes_; }
  bool timed_out() const { return timed_out_; }

 private:
  bool dfs(Int depth) {
    if (depth == n_) return true;
    if (timed_out_) return false;
    const Int x = order_[static_cast<std::size_t>(depth)];
    Int forced = 0;
    for (const auto& [ci, a] : touching_[static_cast<std::size_t>(x)]) {
      if (open_[static_cast<std::size_t>(ci)] != 1) continue;
      const Int need = cons_[static_cast<std::size_t>(ci)].rhs - partial_[static_cast<std::size_t>(ci)];
      if (need % a != 0) return false;
      if (forced != 0 && forced != need / a) return false;
      forced = need / a;
    }
    if (forced != 0) {
      if (forced < 1 || forced > n_ || used_[static_cast<std::size_t>(forced)]) return false;
      const bool ok = place(x, forced) && dfs(depth + 1);
      if (!ok) unplace(x);
      return ok;
    }
    for (Int value = 1; value <= n_; ++value) {
      if (used_[static_cast<std::size_t>(value)]) continue;
      if (place(x, value) && dfs(depth + 1)) return true;
      unplace(x);
      if (timed_out_) return false;
    }
    return false;
  }

  // Always records the assignment; returns false if some constraint breaks.
  bool place(Int x, Int value) {
    if (++nodes_ % 8192 == 0 && std::chrono::steady_clock::now() > deadline_) timed_out_ = true;
    label_[static_cast<std::size_t>(x)] = value;
    used_[static_cast<std::size_t>(value)] = true;
    for (const auto& [ci, a] : touching_[static_cast<std::size_t>(x)]) {
      partial_[static_cast<std::size_t>(ci)] += a * value;
      --open_[static_cast<std::size_t>(ci)];
    }
    if (timed_out_) return false;
    free_range_ = {0, 0};
    for (const auto& [ci, a] : touching_[static_cast<std::size_t>(x)])
      if (!feasible(static_cast<std::size_t>(ci))) return false;
    return true;
  }

  void unplace(Int x) {
    const Int value = label_[static_cast<std::size_t>(x)];
    for (const auto& [ci, a] : touching_[static_cast<std::size_t>(x)]) {
      partial_[static_cast<std::size_t>(ci)] -= a * value;
      ++open_[static_cast<std::size_t>(ci)];
    }
    used_[static_cast<std::size_t>(value)] = false;
    label_[static_cast<std::size_t>(x)] = 0;
  }

  bool feasible(std::size_t ci) {
    const auto& con = cons_[ci];
    const Int need = con.rhs - partial_[ci];
    const Int open = open_[ci];
    if (open == 0) return need == 0;
    if (open == 1) {
      for (const auto& [y, a] : con.terms) {
        if (label_[static_cast<std::size_t>(y)] != 0) continue;
        if (need % a != 0) return false;
        const Int v = need / a;
        return v >= 1 && v <= n_ && !used_[static_cast<std::size_t>(v)];
      }
    }
    if (con.unit) {
      // Sum of `open` distinct free labels.
      Int lo = 0, hi = 0;
      for (Int v = 1, k = 0; v <= n_ && k < open; ++v)
        if (!used_[static_cast<std::size_t>(v)]) lo += v, ++k;
      for (Int v = n_, k = 0; v >= 1 && k < open; --v)
        if (!used_[static_cast<std::size_t>(v)]) hi += v, ++k;
      return lo <= need && need <= hi;
    }
    if (free_range_.first == 0) {
      Int v = 1;
      while (used_[static_cast<std::size_t>(v)]) ++v;
      Int w = n_;
      while (used_[static_cast<std::size_t>(w)]) --w;
      free_range_ = {v, w};
    }
    Int lo = 0, hi = 0;
    for (const auto& [y, a] : con.terms) {
      if (label_[static_cast<std::size_t>(y)] != 0) continue;
      lo += a > 0 ? a * free_range_.first : a * free_range_.second;
      hi += a > 0 ? a * free_range_.second : a * free_range_.first;
    }
    return lo <= need && need <= hi;
  }

  Int n_;
  std::chrono::steady_clock::time_point deadline_;
  std::vector<LinearConstraint> cons_;
  std::vector<std::vector<std::pair<Int, Int>>> touching_;  // (constraint, coefficient) per vertex
  std::vector<Int> order_;
  std::vector<Int> label_;  // 0 = open
  std::vector<bool> used_;
  std::vector<Int> partial_, open_;
  std::pair<Int, Int> free_range_{0, 0};  // smallest and largest free label, per placement
  std::uint64_t nodes_ = 0;
  bool timed_out_ = false;
};

}  // namespace detail

inline SearchOutcome solve_cdm(const CirculantSpec& spec,
                               std::chrono::milliseconds budget = std::chrono::seconds(60),
                               const OracleOptions& options = {}) {
  if (spec.order() > options.max_n)
    throw std::invalid_argument("oracle refuses n = " + std::to_string(spec.order()) + " above the maximum " +
                                std::to_string(options.max_n));
  const auto start = std::chrono::steady_clock::now();
  SearchOutcome out;
  const auto finish = [&]() -> SearchOutcome& {
    out.elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start);
    return out;
  };

  const auto r = closed_magic_constant(spec.order(), spec.valency());
  if (!r) {
    out.refusal = Refusal{Refusal::Kind::ParityInfeasible};
    return finish();
  }
  if (options.use_prefilter) {
    if (auto refusal = spectral_prefilter(spec)) {
      out.refusal = refusal;
      return finish();
    }
  }

  detail::MagicSearch search(spec, *r, start + budget);
  auto labels = search.run();
  out.nodes_explored = search.nodes();
  if (search.timed_out()) {
    out.status = SearchStatus::Timeout;
  } else if (labels) {
    Labeling labeling(std::move(*labels));
    const auto verdict = verify_labeling(spec, labeling);
    if (!verdict.accepted) throw std::logic_error("oracle produced an invalid labeling: " + verdict.reason);
    labeling.set_magic_constant(verdict.magic_constant);
    out.status = SearchStatus::Found;
    out.labeling = std::move(labeling);
  }
  return finish();
}

/// Connected inverse-closed sets of the given valency, n ascending, then
/// generators lexicographic:
///   3: {+-a, n/2}, 4: {+-a, +-b}, 5: {+-a, +-b, n/2}, 1 <= a < b < n/2.
inline void for_each_spec(Int valency, Int max_n, const std::function<void(const CirculantSpec&)>& visit) {
  if (valency < 3 || valency > 5) throw std::invalid_argument("enumeration supports valency 3, 4, 5");
  const bool involution = valency != 4;
  const Int pairs = valency / 2;
  for (Int n = 3; n <= max_n; ++n) {
    if (involution && n % 2 != 0) continue;
    const Int half_open = (n + 1) / 2;  // a, b < n/2
    for (Int a = 1; a < half_open; ++a) {
      if (2 * a == n) continue;
      if (pairs == 1) {
        CirculantSpec spec(n, {a, n / 2});
        if (spec.valency() == valency && spec.is_connected()) visit(spec);
        continue;
      }
      for (Int b = a + 1; 2 * b < n; ++b) {
        std::vector<Int> gens{a, b};
        if (involution) gens.push_back(n / 2);
        CirculantSpec spec(n, gens);
        if (spec.valency() == valency && spec.is_connected()) visit(spec);
      }
    }
  }
}

inline std::vector<CirculantSpec> enumerate_specs(Int valency, Int max_n) {
  std::vector<CirculantSpec> out;
  for_each_spec(valency, max_n, [&](const CirculantSpec& s) { out.push_back(s); });
  return out;
}

}  // namespace cdm
