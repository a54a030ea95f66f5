#pragma once

#include <boost/rational.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace ew {

using Rational = boost::rational<std::int64_t>;

inline double to_double(const Rational& r) {
  return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

// 2^k as an exact rational, k may be negative.
Rational pow2(int k);

std::int64_t rat_floor(const Rational& r);
std::int64_t rat_ceil(const Rational& r);

// Half-open axis-aligned box with exact rational corners. All coordinates in
// this project have denominators of the form 3*2^j, so int64 rationals never
// come close to overflow at desk scales.
struct RationalBox {
  std::vector<Rational> lo, hi;

  int dim() const { return static_cast<int>(lo.size()); }
  Rational side(int axis) const { return hi[axis] - lo[axis]; }
  Rational volume() const;
  bool is_cube() const;
  bool contains(const RationalBox& other) const;       // other subset of *this
  bool contains_point(const std::vector<Rational>& x) const;
  bool intersects(const RationalBox& other) const;
  std::string str() const;

  friend bool operator==(const RationalBox&, const RationalBox&) = default;
};

// Shift vector t of the grid D_t; bit i set means t_i = 1/3 on axis i.
struct GridShift {
  int n = 1;
  unsigned mask = 0;

  Rational component(int axis) const {
    return (mask >> axis) & 1u ? Rational(1, 3) : Rational(0);
  }
  friend bool operator==(const GridShift&, const GridShift&) = default;
};

// Cube 2^{-k}([0,1)^n + m + (-1)^k t) of the grid D_t. Side length 2^{-k}.
struct DyadicCube {
  GridShift shift;
  int scale = 0;
  std::vector<std::int64_t> index;

  friend bool operator==(const DyadicCube&, const DyadicCube&) = default;
  std::string str() const;
};

// Computational domain [-2^L, 2^L)^n.
struct Window {
  int n = 1;
  int L = 0;

  RationalBox box() const;
};

RationalBox cube_box(const DyadicCube& cube);

// Parent at scale k-1 and the 2^n children at scale k+1 of the same grid.
// Both located by rational containment, then verified exactly.
DyadicCube parent_of(const DyadicCube& cube);
std::vector<DyadicCube> children_of(const DyadicCube& cube);
std::pair<DyadicCube, std::vector<DyadicCube>> parent_and_children(const DyadicCube& cube);

// Smallest cube of any of the 2^n shifted grids that contains `box` with
// side at most 6x the side of `box`, restricted to cubes inside the window.
// Ties at equal side go to the grid with the smaller shift mask (t = 0 first).
// Throws std::runtime_error when the window is too small to hold a cover.
DyadicCube cover_cube(const RationalBox& box, const Window& window);

enum class CubePolicy {
  InsideWindow,   // box(Q) subset of the window
  OverlapWindow,  // box(Q) intersects the window
};

// All cubes of the grid at scales in [scale_min, scale_max] admitted by the
// policy, ordered by (scale, lexicographic index).
std::vector<DyadicCube> enumerate_cubes(const Window& window, const GridShift& grid,
                                        int scale_min, int scale_max,
                                        CubePolicy policy = CubePolicy::InsideWindow);

}  // namespace ew
