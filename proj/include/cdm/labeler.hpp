#pragma once

// Explicit closed distance magic labelings for every positive classification.

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdint>
#include <iterator>
#include <numeric>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cdm/circulant.hpp"
#include "cdm/classifier.hpp"
#include "cdm/labeling.hpp"
#include "cdm/linear.hpp"

namespace cdm {

/// A construction produced something the verifier rejects.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class SearchTimeout : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline Labeling verified(const CirculantSpec& spec, Labeling labeling, const char* what) {
  const auto verdict = verify_labeling(spec, labeling);
  if (!verdict.accepted) throw InternalError(std::string(what) + " produced an invalid labeling: " + verdict.reason);
  labeling.set_magic_constant(verdict.magic_constant);
  return labeling;
}

}  // namespace detail

/// Family (i): l(x) = x + 1 on the first half, 3n/2 - x on the second.
inline Labeling label_family_i(Int n) {
  if (n % 2 != 0 || n < 6) throw std::invalid_argument("label_family_i: n must be even and at least 6");
  std::vector<Int> values(static_cast<std::size_t>(n));
  for (Int x = 0; x < n; ++x) values[static_cast<std::size_t>(x)] = x < n / 2 ? x + 1 : 3 * n / 2 - x;
  return detail::verified(canonical_spec(n, n / 2 - 1), Labeling(std::move(values)), "family (i) formula");
}

/// Row k holds the ordered coset 3k + <n/6>, entries reduced mod n.
struct CosetFrame {
  Int n = 0;
  Int step = 0;
  std::vector<std::array<Int, 6>> rows;

  /// Rows are pairwise disjoint and cover Z_n (fails exactly when 9 | n).
  bool partitions() const {
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    for (const auto& row : rows)
      for (Int x : row) {
        if (seen[static_cast<std::size_t>(x)]) return false;
        seen[static_cast<std::size_t>(x)] = true;
      }
    return static_cast<Int>(rows.size()) * 6 == n;
  }
};

inline CosetFrame make_coset_frame(Int n) {
  if (n < 6 || n % 6 != 0) throw std::invalid_argument("coset frame needs 6 | n");
  CosetFrame frame{n, n / 6, {}};
  frame.rows.reserve(static_cast<std::size_t>(n / 6));
  for (Int k = 0; k < n / 6; ++k) {
    std::array<Int, 6> row{};
    for (Int i = 0; i < 6; ++i) row[static_cast<std::size_t>(i)] = (3 * k + i * frame.step) % n;
    frame.rows.push_back(row);
  }
  return frame;
}

/// Labels of the six positions of row k, in coset order.
inline std::array<Int, 6> coset_row_labels(Int n, Int k) {
  return {1 + 3 * k, n - 1 - 3 * k, 3 + 3 * k, n - 2 - 3 * k, 2 + 3 * k, n - 3 * k};
}

/// Families (iii) and (iv) share one coset labeling.
inline Labeling label_family_iii_iv(Int n, Int c) {
  if (!check_family_iii(n, c) && !check_family_iv(n, c))
    throw std::invalid_argument("label_family_iii_iv: (" + std::to_string(n) + ", " + std::to_string(c) +
                                ") is in neither family (iii) nor (iv)");
  const auto frame = make_coset_frame(n);
  if (!frame.partitions()) throw InternalError("coset rows do not partition Z_" + std::to_string(n));
  std::vector<Int> values(static_cast<std::size_t>(n), 0);
  for (Int k = 0; k < n / 6; ++k) {
    const auto labels = coset_row_labels(n, k);
    for (std::size_t i = 0; i < 6; ++i) values[static_cast<std::size_t>(frame.rows[static_cast<std::size_t>(k)][i])] = labels[i];
  }
  return detail::verified(canonical_spec(n, c), Labeling(std::move(values)), "coset construction");
}

namespace detail {

// Backtracking for labelings with l(x + n/2) = n + 1 - l(x). The variables
// are the labels of vertices 0..n/2-1 and each closed-sum constraint is
// linear in them. A constraint left with one open variable forces it, and the
// next branching variable is the one closest to being forced.
class AntipodalSearch {
 public:
  AntipodalSearch(const CirculantSpec& spec, std::chrono::steady_clock::time_point deadline)
      : n_(spec.order()), m_(n_ / 2), deadline_(deadline) {
    const Int r = *closed_magic_constant(n_, spec.valency());
    std::vector<LinearEquation> rows;
    for (Int x = 0; x < m_; ++x) {
      std::vector<Int> coef(static_cast<std::size_t>(m_), 0);
      LinearEquation eq;
      eq.rhs = r;
      for (Vertex y : spec.closed_neighborhood(Vertex{x})) {
        const Int p = y.get() % m_;
        if (y.get() >= m_) {
          eq.rhs -= n_ + 1;
          --coef[static_cast<std::size_t>(p)];
        } else {
          ++coef[static_cast<std::size_t>(p)];
        }
      }
      for (Int p = 0; p < m_; ++p)
        if (coef[static_cast<std::size_t>(p)] != 0) eq.terms.emplace_back(p, coef[static_cast<std::size_t>(p)]);
      rows.push_back(std::move(eq));
    }
    // Reduced rows close long before the raw ones and force pivots early.
    auto reduced = reduced_row_echelon(rows, m_);
    const std::size_t raw_rows = rows.size();
    rows.insert(rows.end(), std::make_move_iterator(reduced.begin()), std::make_move_iterator(reduced.end()));

    vars_.assign(static_cast<std::size_t>(m_), {});
    for (std::size_t i = 0; i < rows.size(); ++i) {
      auto& eq = rows[i];
      if (eq.terms.empty()) {
        inconsistent_ = inconsistent_ || eq.rhs != 0;
        continue;
      }
      Constraint con;
      con.terms = std::move(eq.terms);
      con.rhs = eq.rhs;
      con.open = static_cast<Int>(con.terms.size());
      con.raw = i < raw_rows;
      for (const auto& [p, a] : con.terms) (a > 0 ? con.pos_open : con.neg_open) += a > 0 ? a : -a;
      for (const auto& [p, a] : con.terms) vars_[static_cast<std::size_t>(p)].push_back(static_cast<Int>(cons_.size()));
      cons_.push_back(std::move(con));
    }
    value_.assign(static_cast<std::size_t>(m_), 0);
    used_.assign(static_cast<std::size_t>(n_ + 1), false);
  }

  // Rounds of the complete search, each with its own fixed value order and a
  // node cap that doubles per round; a round that finishes under its cap is
  // exhaustive. Every order is seeded by the round number, so runs repeat.
  std::optional<Labeling> run() {
    if (inconsistent_) return std::nullopt;
    std::vector<Int> order(static_cast<std::size_t>(n_));
    std::iota(order.begin(), order.end(), Int{1});
    for (unsigned round = 0;; ++round) {
      if (round > 0) {
        std::mt19937_64 rng(round);
        std::shuffle(order.begin(), order.end(), rng);
      }
      value_order_ = order;
      round_limit_ = kFirstRoundNodes << std::min(round, 40u);
      round_nodes_ = 0;
      capped_ = false;
      undo_to(0);
      // Rotations preserve the antipodal property, so label 1 may sit at 0.
      if (assign_and_propagate(0, 1) && search()) break;
      if (!capped_) return std::nullopt;
    }
    std::vector<Int> values(static_cast<std::size_t>(n_));
    for (Int p = 0; p < m_; ++p) {
      values[static_cast<std::size_t>(p)] = value_[static_cast<std::size_t>(p)];
      values[static_cast<std::size_t>(p + m_)] = n_ + 1 - value_[static_cast<std::size_t>(p)];
    }
    return Labeling(std::move(values));
  }

  std::uint64_t nodes() const { return nodes_; }

 private:
  struct Constraint {
    std::vector<std::pair<Int, Int>> terms;  // (variable, coefficient)
    Int rhs = 0;
    Int partial = 0;
    Int open = 0;
    Int pos_open = 0;  // sum of positive open coefficients
    Int neg_open = 0;  // sum of |negative open coefficients|
    bool raw = false;

    // Open labels lie in 1..n, which bounds what the open terms can add.
    bool reachable(Int n) const {
      const Int need = rhs - partial;
      return need >= pos_open - neg_open * n && need <= pos_open * n - neg_open;
    }
  };

  bool search() {
    const Int p = pick_variable();
    if (p < 0) return true;
    for (Int v : value_order_) {
      if (used_[static_cast<std::size_t>(v)]) continue;
      if (++round_nodes_ > round_limit_) {
        capped_ = true;
        return false;
      }
      const std::size_t mark = trail_.size();
      if (assign_and_propagate(p, v) && search()) return true;
      undo_to(mark);
    }
    return false;
  }

  // Branch on the variable whose raw closed-sum rows are closest to forcing.
  Int pick_variable() const {
    Int best = -1, best_open = 0, best_tight = 0;
    for (Int p = 0; p < m_; ++p) {
      if (value_[static_cast<std::size_t>(p)] != 0) continue;
      Int min_open = m_ + 1, tight = 0;
      for (Int ci : vars_[static_cast<std::size_t>(p)]) {
        const auto& con = cons_[static_cast<std::size_t>(ci)];
        if (!con.raw) continue;
        if (con.open < min_open) {
          min_open = con.open;
          tight = 0;
        }
        if (con.open == min_open) ++tight;
      }
      if (best < 0 || min_open < best_open || (min_open == best_open && tight > best_tight)) {
        best = p;
        best_open = min_open;
        best_tight = tight;
      }
    }
    return best;
  }

  bool assign_and_propagate(Int p0, Int v0) {
    std::vector<std::pair<Int, Int>> queue{{p0, v0}};
    while (!queue.empty()) {
      const auto [p, v] = queue.back();
      queue.pop_back();
      if (value_[static_cast<std::size_t>(p)] != 0) {
        if (value_[static_cast<std::size_t>(p)] != v) return false;
        continue;
      }
      if (v < 1 || v > n_ || used_[static_cast<std::size_t>(v)]) return false;
      if (++nodes_ % 4096 == 0 && std::chrono::steady_clock::now() > deadline_)
        throw SearchTimeout("family (ii) search budget exhausted");
      value_[static_cast<std::size_t>(p)] = v;
      used_[static_cast<std::size_t>(v)] = true;
      used_[static_cast<std::size_t>(n_ + 1 - v)] = true;
      trail_.push_back(p);
      // Every constraint of p is updated before reporting a conflict so that
      // undo_to can reverse the assignment uniformly.
      bool conflict = false;
      for (Int ci : vars_[static_cast<std::size_t>(p)]) {
        auto& con = cons_[static_cast<std::size_t>(ci)];
        for (const auto& [q, a] : con.terms)
          if (q == p) {
            con.partial += a * v;
            (a > 0 ? con.pos_open : con.neg_open) -= a > 0 ? a : -a;
          }
        --con.open;
        if (!con.reachable(n_)) {
          conflict = true;
        } else if (con.open == 0) {
          conflict = conflict || con.partial != con.rhs;
        } else if (con.open == 1) {
          for (const auto& [q, a] : con.terms) {
            if (value_[static_cast<std::size_t>(q)] != 0) continue;
            const Int need = con.rhs - con.partial;
            if (need % a != 0) conflict = true;
            else queue.emplace_back(q, need / a);
          }
        }
      }
      if (conflict) return false;
    }
    return true;
  }

  void undo_to(std::size_t mark) {
    while (trail_.size() > mark) {
      const Int p = trail_.back();
      trail_.pop_back();
      const Int v = value_[static_cast<std::size_t>(p)];
      for (Int ci : vars_[static_cast<std::size_t>(p)]) {
        auto& con = cons_[static_cast<std::size_t>(ci)];
        for (const auto& [q, a] : con.terms)
          if (q == p) {
            con.partial -= a * v;
            (a > 0 ? con.pos_open : con.neg_open) += a > 0 ? a : -a;
          }
        ++con.open;
      }
      used_[static_cast<std::size_t>(v)] = false;
      used_[static_cast<std::size_t>(n_ + 1 - v)] = false;
      value_[static_cast<std::size_t>(p)] = 0;
    }
  }

  Int n_, m_;
  std::chrono::steady_clock::time_point deadline_;
  std::vector<Constraint> cons_;
  std::vector<std::vector<Int>> vars_;  // constraints touching each variable
  std::vector<Int> value_;              // 0 = open
  std::vector<bool> used_;
  std::vector<Int> trail_;
  std::vector<Int> value_order_;
  std::uint64_t nodes_ = 0;
  std::uint64_t round_nodes_ = 0;
  std::uint64_t round_limit_ = 0;
  bool capped_ = false;
  bool inconsistent_ = false;
  static constexpr std::uint64_t kFirstRoundNodes = 2000;
};

}  // namespace detail

/// Family (ii): constrained search under l(x) + l(x + n/2) = n + 1.
/// Throws SearchTimeout when the budget runs out; an exhausted search is
/// reported as InternalError since a labeling is known to exist.
inline Labeling label_family_ii(Int n, Int c, std::chrono::milliseconds budget = std::chrono::seconds(60)) {
  if (!check_family_ii(n, c))
    throw std::invalid_argument("label_family_ii: (" + std::to_string(n) + ", " + std::to_string(c) +
                                ") is not in family (ii)");
  const auto spec = canonical_spec(n, c);
  detail::AntipodalSearch search(spec, std::chrono::steady_clock::now() + budget);
  auto found = search.run();
  if (!found) throw InternalError("family (ii) search exhausted without a labeling");
  return detail::verified(spec, std::move(*found), "family (ii) search");
}

/// Labeling of `spec` pulled back from a labeling of the canonical spec
/// through x -> q x.
inline Labeling pull_back(const Labeling& canonical, Int multiplier) {
  const Int n = canonical.order();
  std::vector<Int> values(static_cast<std::size_t>(n));
  for (Int x = 0; x < n; ++x) values[static_cast<std::size_t>(x)] = canonical.values()[static_cast<std::size_t>(mod(multiplier * x, n))];
  return Labeling(std::move(values));
}

/// Classify, then build and verify a labeling; nullopt for negative verdicts.
inline std::optional<Labeling> label(const CirculantSpec& spec,
                                     std::chrono::milliseconds search_budget = std::chrono::seconds(60)) {
  const auto result = classify(spec);
  if (!result.is_cdm) return std::nullopt;
  const Int n = spec.order();

  // Cheapest construction first; family (ii) needs a search.
  const FamilyMatch* chosen = nullptr;
  for (Family f : {Family::K2, Family::K3, Family::K4, Family::K5, Family::FamilyI, Family::FamilyIII,
                   Family::FamilyIV, Family::FamilyII})
    for (const auto& m : result.matches)
      if (!chosen && m.family == f) chosen = &m;

  Labeling canonical;
  switch (chosen->family) {
    case Family::K2:
    case Family::K3:
    case Family::K4:
    case Family::K5:
      return detail::verified(spec, identity_labeling(n), "complete-graph labeling");
    case Family::FamilyI: canonical = label_family_i(n); break;
    case Family::FamilyII: canonical = label_family_ii(n, chosen->c, search_budget); break;
    case Family::FamilyIII:
    case Family::FamilyIV: canonical = label_family_iii_iv(n, chosen->c); break;
  }
  return detail::verified(spec, pull_back(canonical, chosen->multiplier), "multiplier pull-back");
}

}  // namespace cdm
