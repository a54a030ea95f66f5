#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "entroweight/geometry.hpp"

#include <random>

using namespace ew;

namespace {

RationalBox interval(Rational lo, Rational hi) { return RationalBox{{lo}, {hi}}; }

}  // namespace

TEST_CASE("cube_box matches the shifted-grid formula") {
  CHECK(cube_box({{1, 0}, 0, {0}}) == interval(0, 1));
  CHECK(cube_box({{1, 1}, 1, {0}}) == interval(Rational(-1, 6), Rational(1, 3)));
  CHECK(cube_box({{1, 1}, 0, {2}}) == interval(Rational(7, 3), Rational(10, 3)));
}

TEST_CASE("parent and children of the unit cube") {
  DyadicCube unit{{1, 0}, 0, {0}};
  auto [parent, kids] = parent_and_children(unit);
  CHECK(cube_box(parent) == interval(0, 2));
  REQUIRE(kids.size() == 2);
  CHECK(cube_box(kids[0]) == interval(0, Rational(1, 2)));
  CHECK(cube_box(kids[1]) == interval(Rational(1, 2), 1));
}

TEST_CASE("shifted-grid parent found by containment") {
  DyadicCube c{{1, 1}, 1, {0}};  // box [-1/6, 1/3)
  DyadicCube p = parent_of(c);
  CHECK(p.scale == 0);
  CHECK(cube_box(p).contains(cube_box(c)));
}

TEST_CASE("cover_cube examples") {
  Window w{1, 2};
  DyadicCube a = cover_cube(interval(0, 1), w);
  CHECK(a.shift.mask == 0);
  CHECK(cube_box(a) == interval(0, 1));
  DyadicCube b = cover_cube(interval(Rational(1, 10), Rational(7, 20)), w);
  CHECK(b.shift.mask == 0);
  CHECK(cube_box(b) == interval(0, Rational(1, 2)));
  DyadicCube c = cover_cube(interval(Rational(-1, 2), Rational(1, 2)), w);
  CHECK(c.shift.mask == 1);
  CHECK(cube_box(c) == interval(Rational(-2, 3), Rational(4, 3)));
}

TEST_CASE("enumerate_cubes examples") {
  auto side1 = enumerate_cubes(Window{1, 0}, {1, 0}, 0, 0);
  REQUIRE(side1.size() == 2);
  CHECK(cube_box(side1[0]) == interval(-1, 0));
  CHECK(cube_box(side1[1]) == interval(0, 1));

  auto side2 = enumerate_cubes(Window{1, 1}, {1, 0}, -1, -1);
  REQUIRE(side2.size() == 2);
  CHECK(cube_box(side2[0]) == interval(-2, 0));
  CHECK(cube_box(side2[1]) == interval(0, 2));

  auto shifted = enumerate_cubes(Window{1, 1}, {1, 1}, 0, 0);
  REQUIRE(shifted.size() == 3);
  for (int i = 0; i < 3; ++i) {
    Rational m(i - 2);
    CHECK(cube_box(shifted[size_t(i)]) ==
          interval(m + Rational(1, 3), m + Rational(4, 3)));
  }
}

TEST_CASE("random parent/child/nesting invariants, both grids, n = 1 and 2") {
  std::mt19937_64 rng(424242);
  for (int trial = 0; trial < 2000; ++trial) {
    const int n = 1 + int(rng() % 2);
    GridShift t{n, unsigned(rng() % (1u << n))};
    DyadicCube c{t, int(rng() % 9) - 4, {}};
    for (int a = 0; a < n; ++a) c.index.push_back(std::int64_t(rng() % 9) - 4);

    auto [parent, kids] = parent_and_children(c);
    CHECK(cube_box(parent).contains(cube_box(c)));
    Rational vol = 0;
    for (size_t i = 0; i < kids.size(); ++i) {
      CHECK(cube_box(c).contains(cube_box(kids[i])));
      vol += cube_box(kids[i]).volume();
      for (size_t j = i + 1; j < kids.size(); ++j)
        CHECK(!cube_box(kids[i]).intersects(cube_box(kids[j])));
    }
    CHECK(vol == cube_box(c).volume());
  }
}

TEST_CASE("same-grid cubes are nested or disjoint") {
  for (unsigned mask = 0; mask < 2; ++mask) {
    auto cubes = enumerate_cubes(Window{1, 1}, {1, mask}, -1, 3);
    for (size_t i = 0; i < cubes.size(); ++i)
      for (size_t j = i + 1; j < cubes.size(); ++j) {
        RationalBox a = cube_box(cubes[i]), b = cube_box(cubes[j]);
        CHECK((a.contains(b) || b.contains(a) || !a.intersects(b)));
      }
  }
}

TEST_CASE("cover_cube containment and 6x bound on random cubes") {
  std::mt19937_64 rng(777);
  Window w{1, 2};
  for (int trial = 0; trial < 200; ++trial) {
    // mesh-aligned cube with denominator 3*2^5 inside [-2, 2)
    const std::int64_t den = 96;
    std::int64_t len = 1 + std::int64_t(rng() % 64);
    std::int64_t lo = std::int64_t(rng() % (2 * den - len)) - den / 2;
    RationalBox box = interval(Rational(lo, den), Rational(lo + len, den));
    DyadicCube q = cover_cube(box, w);
    CHECK(cube_box(q).contains(box));
    CHECK(cube_box(q).side(0) <= 6 * box.side(0));
  }
}
