#pragma once

// Circulant graphs Cay(Z_n; S) with S inverse-closed, plus the multiplier
// normalization of valency-5 connection sets to {+-1, +-c, n/2}.

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cdm/arith.hpp"
#include "cdm/strong_type.hpp"

namespace cdm {

class CirculantSpec {
 public:
  /// Inverse closure of `generators` in Z_n. Generators must lie in 1..n-1.
  CirculantSpec(Int n, const std::vector<Int>& generators) : n_(n) {
    if (n < 2) throw std::invalid_argument("circulant order must be at least 2");
    for (Int g : generators) {
      if (g < 1 || g >= n)
        throw std::invalid_argument("generator " + std::to_string(g) + " outside 1.." + std::to_string(n - 1));
      set_.push_back(g);
      set_.push_back(n - g);
    }
    std::sort(set_.begin(), set_.end());
    set_.erase(std::unique(set_.begin(), set_.end()), set_.end());
  }

  Int order() const { return n_; }
  const std::vector<Int>& connection_set() const { return set_; }
  Int valency() const { return static_cast<Int>(set_.size()); }
  bool contains(Int s) const { return std::binary_search(set_.begin(), set_.end(), mod(s, n_)); }

  bool is_connected() const {
    Int g = n_;
    for (Int s : set_) g = std::gcd(g, s);
    return g == 1;
  }

  /// {x} followed by x + s for s in S, in connection-set order.
  std::vector<Vertex> closed_neighborhood(Vertex x) const {
    check_vertex(x);
    std::vector<Vertex> out;
    out.reserve(set_.size() + 1);
    out.push_back(x);
    for (Int s : set_) out.emplace_back((x.get() + s) % n_);
    return out;
  }

  /// Every undirected edge once as (u, v) with u < v, sorted.
  std::vector<std::pair<Vertex, Vertex>> edge_list() const {
    std::vector<std::pair<Vertex, Vertex>> out;
    out.reserve(static_cast<std::size_t>(n_ * valency() / 2));
    for (Int x = 0; x < n_; ++x)
      for (Int s : set_) {
        const Int y = (x + s) % n_;
        if (x < y) out.emplace_back(Vertex{x}, Vertex{y});
      }
    std::sort(out.begin(), out.end());
    return out;
  }

  /// Image of S under multiplication by q, sorted.
  std::vector<Int> scaled_set(Int q) const {
    std::vector<Int> out;
    out.reserve(set_.size());
    for (Int s : set_) out.push_back(mod(q * s, n_));
    std::sort(out.begin(), out.end());
    return out;
  }

  std::string to_string() const {
    std::ostringstream os;
    os << "Cay(Z_" << n_ << "; {";
    for (std::size_t i = 0; i < set_.size(); ++i) os << (i ? "," : "") << set_[i];
    os << "})";
    return os.str();
  }

  friend bool operator==(const CirculantSpec&, const CirculantSpec&) = default;

 private:
  void check_vertex(Vertex x) const {
    if (x.get() < 0 || x.get() >= n_) throw std::out_of_range("vertex outside 0..n-1");
  }

  Int n_;
  std::vector<Int> set_;
};

inline CirculantSpec make_spec(Int n, const std::vector<Int>& generators) { return CirculantSpec(n, generators); }

/// Spec of Cay(Z_n; {+-1, +-c, n/2}).
inline CirculantSpec canonical_spec(Int n, Int c) { return CirculantSpec(n, {1, c, n / 2}); }

struct CanonicalForm {
  Int n = 0;
  Int c = 0;
  Int multiplier = 1;

  friend bool operator==(const CanonicalForm&, const CanonicalForm&) = default;
};

inline bool is_valency5_with_involution(const CirculantSpec& spec) {
  const Int n = spec.order();
  return spec.valency() == 5 && n % 2 == 0 && spec.contains(n / 2);
}

/// Every distinct (n, c) reachable as q*S = {+-1, +-c, n/2} for a unit q;
/// each c is reported with the smallest multiplier reaching it.
inline std::vector<CanonicalForm> canonical_forms_valency5(const CirculantSpec& spec) {
  if (!is_valency5_with_involution(spec))
    throw std::invalid_argument("canonical_forms_valency5: need |S| = 5 with n even and n/2 in S");
  const Int n = spec.order();
  std::vector<CanonicalForm> out;
  for (Int q : units(n)) {
    const auto image = spec.scaled_set(q);
    if (!std::binary_search(image.begin(), image.end(), Int{1})) continue;
    Int c = 0;
    for (Int s : image)
      if (s != 1 && s != n - 1 && s != n / 2) c = std::min(s, n - s);
    const bool seen = std::any_of(out.begin(), out.end(), [&](const CanonicalForm& f) { return f.c == c; });
    if (!seen) out.push_back({n, c, q});
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.c < b.c; });
  return out;
}

/// Graphviz rendering; `labels`, when non-empty, annotates each vertex.
inline std::string to_dot(const CirculantSpec& spec, const std::vector<Int>& labels = {}) {
  std::ostringstream os;
  os << "graph circulant_" << spec.order() << " {\n";
  for (Int x = 0; x < spec.order(); ++x) {
    os << "  " << x;
    if (!labels.empty()) os << " [label=\"" << x << ":" << labels[static_cast<std::size_t>(x)] << "\"]";
    os << ";\n";
  }
  for (const auto& [u, v] : spec.edge_list()) os << "  " << u << " -- " << v << ";\n";
  os << "}\n";
  return os.str();
}

}  // namespace cdm
