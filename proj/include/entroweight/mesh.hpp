#pragma once

#include "entroweight/geometry.hpp"

#include <array>
#include <cstdint>

namespace ew {

// Uniform mesh on the window [-2^L, 2^L)^n with base cells of side 2^{-J}.
// Oracle computations live on the 3x-refined lattice (cells of side 2^{-J}/3),
// chosen so that every cube of a shifted grid D_t with scale <= J is
// lattice-aligned.
struct Mesh {
  int n = 1;
  int L = 0;
  int J = 0;

  Mesh() = default;
  Mesh(int n_, int L_, int J_);

  std::int64_t base_per_axis() const { return std::int64_t(1) << (L + J + 1); }
  std::int64_t lattice_per_axis() const { return 3 * base_per_axis(); }
  std::int64_t base_cells() const;
  std::int64_t lattice_cells() const;

  Rational base_side() const { return pow2(-J); }
  Rational lattice_side() const { return pow2(-J) / 3; }
  double base_side_d() const { return to_double(base_side()); }
  double lattice_side_d() const { return to_double(lattice_side()); }
  Window window() const { return Window{n, L}; }

  // Base-cell index of a point (clamped into range); n <= 2.
  std::int64_t base_index_of(const std::array<double, 2>& x) const;

  RationalBox base_cell_box(std::int64_t flat) const;

  // Lattice coordinate of a rational position on one axis; throws if the
  // position is not lattice-aligned.
  std::int64_t lattice_coord(const Rational& x) const;

  // Per-axis half-open lattice index range [lo, hi) of a lattice-aligned
  // rational box clipped to the window.
  struct LatticeRange {
    std::array<std::int64_t, 2> lo{0, 0}, hi{0, 0};
    bool empty(int n) const {
      for (int a = 0; a < n; ++a)
        if (lo[a] >= hi[a]) return true;
      return false;
    }
    std::int64_t cells(int n) const {
      std::int64_t c = 1;
      for (int a = 0; a < n; ++a) c *= hi[a] - lo[a];
      return c;
    }
  };
  LatticeRange lattice_range(const RationalBox& box, bool clip_to_window = true) const;

  friend bool operator==(const Mesh&, const Mesh&) = default;
};

}  // namespace ew
