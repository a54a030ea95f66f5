#include "entroweight/mesh.hpp"

#include <cmath>
#include <stdexcept>

namespace ew {

Mesh::Mesh(int n_, int L_, int J_) : n(n_), L(L_), J(J_) {
  if (n < 1 || n > 2) throw std::invalid_argument("Mesh: n must be 1 or 2");
  if (L < 0 || J < 0) throw std::invalid_argument("Mesh: L, J must be nonnegative");
  if (L + J > 24) throw std::invalid_argument("Mesh: L+J exceeds cell budget");
  if (lattice_cells() > (std::int64_t(1) << 26))
    throw std::invalid_argument("Mesh: lattice cell budget exceeded");
}

std::int64_t Mesh::base_cells() const {
  std::int64_t c = 1;
  for (int a = 0; a < n; ++a) c *= base_per_axis();
  return c;
}

std::int64_t Mesh::lattice_cells() const {
  std::int64_t c = 1;
  for (int a = 0; a < n; ++a) c *= lattice_per_axis();
  return c;
}

std::int64_t Mesh::base_index_of(const std::array<double, 2>& x) const {
  const double origin = -std::ldexp(1.0, L);
  const double scale = std::ldexp(1.0, J);
  std::int64_t flat = 0;
  for (int a = n - 1; a >= 0; --a) {
    auto i = static_cast<std::int64_t>(std::floor((x[a] - origin) * scale));
    i = std::max<std::int64_t>(0, std::min(base_per_axis() - 1, i));
    flat = flat * base_per_axis() + i;
  }
  return flat;
}

RationalBox Mesh::base_cell_box(std::int64_t flat) const {
  RationalBox b;
  b.lo.resize(n);
  b.hi.resize(n);
  const Rational origin = -pow2(L);
  for (int a = 0; a < n; ++a) {
    const std::int64_t i = flat % base_per_axis();
    flat /= base_per_axis();
    b.lo[a] = origin + Rational(i) * base_side();
    b.hi[a] = b.lo[a] + base_side();
  }
  return b;
}

std::int64_t Mesh::lattice_coord(const Rational& x) const {
  const Rational c = (x + pow2(L)) / lattice_side();
  if (c.denominator() != 1) throw std::logic_error("lattice_coord: position not lattice-aligned");
  return c.numerator();
}

Mesh::LatticeRange Mesh::lattice_range(const RationalBox& box, bool clip_to_window) const {
  LatticeRange r;
  for (int a = 0; a < n; ++a) {
    Rational lo = box.lo[a], hi = box.hi[a];
    if (clip_to_window) {
      lo = std::max(lo, -pow2(L));
      hi = std::min(hi, pow2(L));
    }
    if (hi <= lo) {
      r.lo[a] = r.hi[a] = 0;
      continue;
    }
    r.lo[a] = lattice_coord(lo);
    r.hi[a] = lattice_coord(hi);
  }
  return r;
}

}  // namespace ew
