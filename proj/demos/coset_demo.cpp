// Classifies Cay(Z_24; {+-1, +-5, 12}), builds its coset labeling, prints the
// labels row by row and checks the closed sums.

#include <iomanip>
#include <iostream>

#include "cdm/cdm.hpp"

int main() {
  using namespace cdm;
  const auto spec = make_spec(24, {1, 5, 12});
  const auto result = classify(spec);
  std::cout << spec.to_string() << ": " << (result.is_cdm ? "closed distance magic" : "not closed distance magic");
  if (const auto* m = result.primary()) {
    std::cout << " via " << to_string(m->family);
    if (m->parameters) std::cout << " (t=" << m->parameters->t << ", k=" << m->parameters->k << ")";
  }
  std::cout << "\n\n";

  const auto labeling = label(spec);
  if (!labeling) return 1;
  const auto frame = make_coset_frame(spec.order());
  for (const auto& row : frame.rows) {
    for (Int x : row) std::cout << std::setw(3) << x << ":" << std::setw(2) << (*labeling)[Vertex{x}] << "  ";
    std::cout << "\n";
  }

  const auto verdict = verify_labeling(spec, *labeling);
  std::cout << "\nclosed sum at every vertex: " << verdict.magic_constant << "\n";
  return verdict.accepted ? 0 : 1;
}
