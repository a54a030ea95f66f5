#pragma once

#include "entroweight/mesh.hpp"

#include <cstdint>
#include <vector>

namespace ew {

// Integral prefix table over lattice cells: prefix[i+1]-prefix[i] equals
// value(cell i) * h^n. Supports n = 1 (flat) and n = 2 (summed-area).
struct LatticeMass {
  Mesh mesh;
  std::vector<double> prefix;

  static LatticeMass build(const Mesh& mesh, const std::vector<double>& lattice_values);
  // Integral of the represented function over the index range.
  double mass(const Mesh::LatticeRange& r) const;
  double mass1(std::int64_t a, std::int64_t b) const { return prefix[size_t(b)] - prefix[size_t(a)]; }
};

// OpenMP kernel: at every lattice cell x in [lo, hi), the supremum over
// lattice intervals [a, b) with lo <= a <= x < b <= hi of
//   (len)^{alpha} * prod_i mass_i(a, b) / len,     len = (b-a)*h.
// One sliding-window maximum pass per interval length; n = 1 only.
std::vector<double> interval_sup(const std::vector<const LatticeMass*>& masses, double alpha,
                                 double h, std::int64_t lo, std::int64_t hi);

namespace ref {
// Serial brute-force reference of interval_sup, kept for tests and the
// kernel benchmark. O((hi-lo)^3); small ranges only.
std::vector<double> interval_sup(const std::vector<const LatticeMass*>& masses, double alpha,
                                 double h, std::int64_t lo, std::int64_t hi);
}  // namespace ref

}  // namespace ew
