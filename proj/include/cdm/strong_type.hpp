#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <ostream>

namespace cdm {

/// Thin tagged wrapper; no implicit conversions in either direction.
template <class Tag, class T = std::int64_t>
class StrongType {
 public:
  using value_type = T;

  constexpr StrongType() = default;
  constexpr explicit StrongType(T v) : value_(v) {}

  constexpr T get() const { return value_; }

  friend constexpr auto operator<=>(const StrongType&, const StrongType&) = default;
  friend std::ostream& operator<<(std::ostream& os, const StrongType& s) { return os << s.value_; }

 private:
  T value_{};
};

/// A vertex of a circulant: a residue in 0..n-1.
using Vertex = StrongType<struct VertexTag>;
/// A label assigned to a vertex: an integer in 1..n.
using Label = StrongType<struct LabelTag>;

}  // namespace cdm

template <class Tag, class T>
struct std::hash<cdm::StrongType<Tag, T>> {
  std::size_t operator()(const cdm::StrongType<Tag, T>& s) const noexcept { return std::hash<T>{}(s.get()); }
};
