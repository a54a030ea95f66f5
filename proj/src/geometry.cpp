#include "entroweight/geometry.hpp"

#include <algorithm>
#include <sstream>

namespace ew {

Rational pow2(int k) {
  if (k < -62 || k > 62) throw std::overflow_error("pow2: scale out of range");
  if (k >= 0) return Rational(std::int64_t(1) << k);
  return Rational(1, std::int64_t(1) << (-k));
}

std::int64_t rat_floor(const Rational& r) {
  std::int64_t q = r.numerator() / r.denominator();
  if (r.numerator() % r.denominator() != 0 && r.numerator() < 0) --q;
  return q;
}

std::int64_t rat_ceil(const Rational& r) { return -rat_floor(-r); }

Rational RationalBox::volume() const {
  Rational v(1);
  for (int a = 0; a < dim(); ++a) v *= side(a);
  return v;
}

bool RationalBox::is_cube() const {
  for (int a = 1; a < dim(); ++a)
    if (side(a) != side(0)) return false;
  return dim() > 0 && side(0) > 0;
}

bool RationalBox::contains(const RationalBox& other) const {
  for (int a = 0; a < dim(); ++a)
    if (other.lo[a] < lo[a] || other.hi[a] > hi[a]) return false;
  return true;
}

bool RationalBox::contains_point(const std::vector<Rational>& x) const {
  for (int a = 0; a < dim(); ++a)
    if (x[a] < lo[a] || x[a] >= hi[a]) return false;
  return true;
}

bool RationalBox::intersects(const RationalBox& other) const {
  for (int a = 0; a < dim(); ++a)
    if (other.hi[a] <= lo[a] || other.lo[a] >= hi[a]) return false;
  return true;
}

std::string RationalBox::str() const {
  std::ostringstream os;
  for (int a = 0; a < dim(); ++a) {
    if (a) os << " x ";
    os << "[" << lo[a] << ", " << hi[a] << ")";
  }
  return os.str();
}

std::string DyadicCube::str() const {
  std::ostringstream os;
  os << "{t=" << shift.mask << ", k=" << scale << ", m=(";
  for (size_t i = 0; i < index.size(); ++i) {
    if (i) os << ",";
    os << index[i];
  }
  os << ")}";
  return os.str();
}

RationalBox Window::box() const {
  RationalBox b;
  b.lo.assign(n, -pow2(L));
  b.hi.assign(n, pow2(L));
  return b;
}

RationalBox cube_box(const DyadicCube& cube) {
  const int n = cube.shift.n;
  const Rational side = pow2(-cube.scale);
  const int sign = (cube.scale % 2 == 0) ? 1 : -1;
  RationalBox b;
  b.lo.resize(n);
  b.hi.resize(n);
  for (int a = 0; a < n; ++a) {
    Rational s = cube.shift.component(a) * sign;
    b.lo[a] = side * (Rational(cube.index[a]) + s);
    b.hi[a] = b.lo[a] + side;
  }
  return b;
}

namespace {

// Index of the cube of grid `shift` at scale k whose box contains the point
// with coordinate x on the given axis: m = floor(x*2^k - (-1)^k t_a).
std::int64_t axis_index_at(const GridShift& shift, int k, int axis, const Rational& x) {
  const int sign = (k % 2 == 0) ? 1 : -1;
  return rat_floor(x * pow2(k) - shift.component(axis) * sign);
}

DyadicCube cube_at(const GridShift& shift, int k, const std::vector<Rational>& x) {
  DyadicCube c;
  c.shift = shift;
  c.scale = k;
  c.index.resize(shift.n);
  for (int a = 0; a < shift.n; ++a) c.index[a] = axis_index_at(shift, k, a, x[a]);
  return c;
}

}  // namespace

DyadicCube parent_of(const DyadicCube& cube) {
  const RationalBox box = cube_box(cube);
  DyadicCube parent = cube_at(cube.shift, cube.scale - 1, box.lo);
  if (!cube_box(parent).contains(box))
    throw std::logic_error("parent_of: containment search failed for " + cube.str());
  return parent;
}

std::vector<DyadicCube> children_of(const DyadicCube& cube) {
  const int n = cube.shift.n;
  const RationalBox box = cube_box(cube);
  const Rational half = pow2(-cube.scale - 1);
  std::vector<DyadicCube> children;
  children.reserve(std::size_t(1) << n);
  for (unsigned corner = 0; corner < (1u << n); ++corner) {
    std::vector<Rational> x(n);
    for (int a = 0; a < n; ++a) x[a] = box.lo[a] + ((corner >> a) & 1u ? half : Rational(0));
    DyadicCube child = cube_at(cube.shift, cube.scale + 1, x);
    if (!box.contains(cube_box(child)))
      throw std::logic_error("children_of: containment search failed for " + cube.str());
    children.push_back(std::move(child));
  }
  std::sort(children.begin(), children.end(),
            [](const DyadicCube& a, const DyadicCube& b) { return a.index < b.index; });
  return children;
}

std::pair<DyadicCube, std::vector<DyadicCube>> parent_and_children(const DyadicCube& cube) {
  return {parent_of(cube), children_of(cube)};
}

DyadicCube cover_cube(const RationalBox& box, const Window& window) {
  if (!box.is_cube()) throw std::invalid_argument("cover_cube: box is not a cube");
  if (!window.box().contains(box)) throw std::invalid_argument("cover_cube: box outside window");
  const int n = window.n;
  const Rational side = box.side(0);
  // Largest k with 2^{-k} >= side; admissible cover sides are 2^{-k'} in
  // [side, 6*side], at most three scales starting at k downward.
  int k = 62;
  while (pow2(-k) < side) --k;
  for (int kc = k; kc >= k - 2; --kc) {
    if (pow2(-kc) > Rational(6) * side) break;
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
      GridShift shift{n, mask};
      DyadicCube cand = cube_at(shift, kc, box.lo);
      RationalBox cb = cube_box(cand);
      if (cb.contains(box) && window.box().contains(cb)) return cand;
    }
  }
  throw std::runtime_error("cover_cube: no qualifying cube inside window (window too small)");
}

std::vector<DyadicCube> enumerate_cubes(const Window& window, const GridShift& grid,
                                        int scale_min, int scale_max, CubePolicy policy) {
  if (scale_min > scale_max) throw std::invalid_argument("enumerate_cubes: empty scale range");
  if (grid.n != window.n) throw std::invalid_argument("enumerate_cubes: dimension mismatch");
  const int n = window.n;
  const Rational wlo = -pow2(window.L), whi = pow2(window.L);
  std::vector<DyadicCube> out;
  for (int k = scale_min; k <= scale_max; ++k) {
    const int sign = (k % 2 == 0) ? 1 : -1;
    std::vector<std::int64_t> mmin(n), mmax(n);
    bool empty = false;
    for (int a = 0; a < n; ++a) {
      const Rational s = grid.component(a) * sign;
      if (policy == CubePolicy::InsideWindow) {
        // wlo <= 2^{-k}(m+s) and 2^{-k}(m+1+s) <= whi
        mmin[a] = rat_ceil(wlo * pow2(k) - s);
        mmax[a] = rat_floor(whi * pow2(k) - s - 1);
      } else {
        // 2^{-k}(m+s) < whi and 2^{-k}(m+1+s) > wlo
        mmax[a] = rat_ceil(whi * pow2(k) - s) - 1;
        mmin[a] = rat_floor(wlo * pow2(k) - s - 1) + 1;
      }
      if (mmin[a] > mmax[a]) empty = true;
    }
    if (empty) continue;
    std::vector<std::int64_t> m(mmin);
    while (true) {
      DyadicCube c;
      c.shift = grid;
      c.scale = k;
      c.index = m;
      out.push_back(std::move(c));
      int a = n - 1;
      while (a >= 0 && m[a] == mmax[a]) {
        m[a] = mmin[a];
        --a;
      }
      if (a < 0) break;
      ++m[a];
    }
  }
  return out;
}

}  // namespace ew
