#pragma once

// Sparse integer linear equations and their reduced row echelon form, used by
// the labeling searches to propagate the closed-sum system as a whole.

#include <cstddef>
#include <numeric>
#include <utility>
#include <vector>

#include "cdm/arith.hpp"
#include "cdm/rational.hpp"

namespace cdm {

/// sum_i coef_i * x_{var_i} = rhs.
struct LinearEquation {
  std::vector<std::pair<Int, Int>> terms;  // (variable, coefficient), coefficient != 0
  Int rhs = 0;
};

/// Nonzero rows of the reduced row echelon form of `system` over Q, each
/// scaled to coprime-denominator integers. Throws std::overflow_error if an
/// entry leaves 64-bit range.
inline std::vector<LinearEquation> reduced_row_echelon(const std::vector<LinearEquation>& system, Int variables) {
  const auto width = static_cast<std::size_t>(variables);
  std::vector<std::vector<Rational>> rows;
  rows.reserve(system.size());
  for (const auto& eq : system) {
    std::vector<Rational> row(width + 1, Rational(0));
    for (const auto& [v, a] : eq.terms) row[static_cast<std::size_t>(v)] += Rational(a);
    row[width] = Rational(eq.rhs);
    rows.push_back(std::move(row));
  }

  std::size_t rank = 0;
  for (std::size_t col = 0; col < width && rank < rows.size(); ++col) {
    std::size_t pivot = rank;
    while (pivot < rows.size() && rows[pivot][col] == Rational(0)) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[rank], rows[pivot]);
    const Rational inv = Rational(1) / rows[rank][col];
    for (auto& v : rows[rank]) v = v * inv;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == rank) continue;
      const Rational f = rows[i][col];
      if (f == Rational(0)) continue;
      for (std::size_t k = col; k <= width; ++k) rows[i][k] = rows[i][k] - f * rows[rank][k];
    }
    ++rank;
  }

  std::vector<LinearEquation> out;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    Int scale = 1;
    bool nonzero = false;
    for (const auto& v : rows[i]) {
      scale = std::lcm(scale, v.den());
      nonzero = nonzero || v != Rational(0);
    }
    if (!nonzero) continue;
    LinearEquation eq;
    for (std::size_t col = 0; col < width; ++col) {
      const Rational v = rows[i][col] * Rational(scale);
      if (v != Rational(0)) eq.terms.emplace_back(static_cast<Int>(col), v.num());
    }
    eq.rhs = (rows[i][width] * Rational(scale)).num();
    out.push_back(std::move(eq));
  }
  return out;
}

}  // namespace cdm
