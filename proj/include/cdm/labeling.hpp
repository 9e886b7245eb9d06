#pragma once

// Vertex labelings and the closed-neighborhood magic check.

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cdm/circulant.hpp"

namespace cdm {

class Labeling {
 public:
  Labeling() = default;
  /// values[x] is the label of vertex x. Bijectivity is checked by
  /// verify_labeling, not here, so that broken inputs can be reported.
  explicit Labeling(std::vector<Int> values, std::optional<Int> magic_constant = std::nullopt)
      : values_(std::move(values)), magic_constant_(magic_constant) {}

  Int order() const { return static_cast<Int>(values_.size()); }
  const std::vector<Int>& values() const { return values_; }
  Label operator[](Vertex x) const { return Label{values_.at(static_cast<std::size_t>(x.get()))}; }

  std::optional<Int> magic_constant() const { return magic_constant_; }
  void set_magic_constant(Int r) { magic_constant_ = r; }

  bool is_bijection() const {
    const auto n = values_.size();
    std::vector<bool> seen(n + 1, false);
    for (Int v : values_) {
      if (v < 1 || v > static_cast<Int>(n) || seen[static_cast<std::size_t>(v)]) return false;
      seen[static_cast<std::size_t>(v)] = true;
    }
    return true;
  }

  friend bool operator==(const Labeling&, const Labeling&) = default;

 private:
  std::vector<Int> values_;
  std::optional<Int> magic_constant_;
};

/// (k+1)(n+1)/2 for a k-regular graph of order n, or nullopt when odd.
inline std::optional<Int> closed_magic_constant(Int n, Int valency) {
  const Int twice = (valency + 1) * (n + 1);
  if (twice % 2 != 0) return std::nullopt;
  return twice / 2;
}

struct LabelingVerdict {
  bool accepted = false;
  Int magic_constant = 0;                 // set when accepted
  std::optional<Vertex> offending_vertex;  // first vertex whose sum differs from vertex 0
  Int offending_sum = 0;
  std::string reason;
};

inline LabelingVerdict verify_labeling(const CirculantSpec& spec, const Labeling& labeling) {
  const Int n = spec.order();
  if (labeling.order() != n)
    throw std::invalid_argument("labeling has " + std::to_string(labeling.order()) + " entries, graph has " +
                                std::to_string(n) + " vertices");
  LabelingVerdict verdict;
  if (!labeling.is_bijection()) {
    verdict.reason = "labels are not a bijection onto 1.." + std::to_string(n);
    return verdict;
  }
  const auto& values = labeling.values();
  const auto closed_sum = [&](Int x) {
    Int sum = values[static_cast<std::size_t>(x)];
    for (Int s : spec.connection_set()) sum += values[static_cast<std::size_t>((x + s) % n)];
    return sum;
  };
  const Int r = closed_sum(0);
  for (Int x = 1; x < n; ++x) {
    const Int sum = closed_sum(x);
    if (sum != r) {
      verdict.offending_vertex = Vertex{x};
      verdict.offending_sum = sum;
      verdict.reason = "closed sum at vertex " + std::to_string(x) + " is " + std::to_string(sum) +
                       ", vertex 0 has " + std::to_string(r);
      return verdict;
    }
  }
  // Summing all closed sums counts every label valency+1 times.
  if (closed_magic_constant(n, spec.valency()) != r) throw std::logic_error("magic constant disagrees with (k+1)(n+1)/2");
  verdict.accepted = true;
  verdict.magic_constant = r;
  return verdict;
}

/// Identity labeling x -> x + 1.
inline Labeling identity_labeling(Int n) {
  std::vector<Int> values(static_cast<std::size_t>(n));
  for (Int x = 0; x < n; ++x) values[static_cast<std::size_t>(x)] = x + 1;
  return Labeling(std::move(values));
}

}  // namespace cdm
