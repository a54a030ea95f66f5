#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "entroweight/gallery.hpp"
#include "entroweight/sparse.hpp"

#include <cstdio>
#include <random>

using namespace ew;

namespace {

StepFunction indicator01(const Mesh& mesh) {
  GallerySpec g;
  g.family = GallerySpec::Family::Indicator;
  g.lo = 0;
  g.hi = 1;
  return make_density(g, mesh);
}

ExponentTuple exps_alpha(double alpha) {
  ExponentTuple e;
  e.alpha = alpha;
  e.q = 1.0;
  return e;
}

std::vector<std::int64_t> cells_of(const Mesh& mesh, const DyadicCube& q) {
  Mesh::LatticeRange r = mesh.lattice_range(cube_box(q), true);
  std::vector<std::int64_t> cells;
  for (std::int64_t i = r.lo[0]; i < r.hi[0]; ++i) cells.push_back(i);
  return cells;
}

}  // namespace

TEST_CASE("stopping construction on the unit indicator") {
  Mesh mesh(1, 1, 5);
  GridShift d0{1, 0};
  StepFunction f = indicator01(mesh);
  SparseFamily fam = build_sparse(f, f, exps_alpha(0.0), d0, 8.0);
  REQUIRE(fam.size() == 1);
  CHECK(fam.cubes[0].scale == -1);
  CHECK(fam.cubes[0].index[0] == 0);
  CHECK(fam.selection_ratio == 8.0);
  CHECK(verify_sparse(fam).pass);

  OperatorField t = sparse_apply(fam, f, f, exps_alpha(0.0));
  OperatorField m = frac_maximal_dyadic(f, f, exps_alpha(0.0), d0);
  double rmin = 1e300, rmax = 0.0;
  for (size_t i = 0; i < t.values.size(); ++i) {
    if (t.values[i] <= 0) continue;
    CHECK(t.values[i] == doctest::Approx(0.25).epsilon(1e-12));
    double r = m.values[i] / t.values[i];
    rmin = std::min(rmin, r);
    rmax = std::max(rmax, r);
  }
  CHECK(rmin == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(rmax == doctest::Approx(4.0).epsilon(1e-12));
}

TEST_CASE("constant inputs select the window-top cubes") {
  Mesh mesh(1, 1, 4);
  GridShift d0{1, 0};
  StepFunction one(mesh, 1.0);
  SparseFamily fam = build_sparse(one, one, exps_alpha(0.0), d0, 8.0);
  CHECK(verify_sparse(fam).pass);
  OperatorField t = sparse_apply(fam, one, one, exps_alpha(0.0));
  for (const auto& cells : fam.exceptional)
    for (std::int64_t c : cells) CHECK(t.values[size_t(c)] == doctest::Approx(1.0));
}

TEST_CASE("zero input gives the empty family") {
  Mesh mesh(1, 1, 4);
  SparseFamily fam =
      build_sparse(StepFunction(mesh), StepFunction(mesh, 1.0), exps_alpha(0.0), GridShift{1, 0}, 0.0);
  CHECK(fam.size() == 0);
  CHECK(verify_sparse(fam).pass);
}

TEST_CASE("verify_sparse counterexample") {
  Mesh mesh(1, 1, 4);
  GridShift d0{1, 0};
  SparseFamily fam;
  fam.mesh = mesh;
  fam.grid = d0;
  DyadicCube top{d0, 0, {0}};
  DyadicCube left{d0, 1, {0}};
  DyadicCube right{d0, 1, {1}};
  fam.cubes = {top, left, right};
  fam.exceptional = {{}, cells_of(mesh, left), cells_of(mesh, right)};
  SparsityReport rep = verify_sparse(fam);
  CHECK_FALSE(rep.pass);
  CHECK(rep.disjoint);
  CHECK_FALSE(rep.entries[0].measure_ok);
  CHECK_FALSE(rep.entries[0].child_union_ok);
  CHECK(rep.entries[1].measure_ok);

  // overlapping exceptional sets are caught too.
  fam.exceptional[0] = cells_of(mesh, left);
  CHECK_FALSE(verify_sparse(fam).disjoint);
}

TEST_CASE("domination report") {
  Mesh mesh(1, 1, 4);
  GridShift d0{1, 0};
  SUBCASE("hand-run indicator case") {
    StepFunction f = indicator01(mesh);
    DominationReport rep = domination_report(f, f, exps_alpha(0.0), d0, 8.0);
    CHECK(rep.a == 8.0);
    CHECK(rep.family_size == 1);
    CHECK(rep.maximal_ratio_min == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(rep.maximal_ratio_max == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(rep.certificate_ratio <= 8.0 + 1e-9);
  }
  SUBCASE("constant inputs") {
    StepFunction one(mesh, 1.0);
    DominationReport rep = domination_report(one, one, exps_alpha(0.0), d0);
    CHECK(rep.maximal_ratio_min == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(rep.maximal_ratio_max == doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("random positive inputs, both grids and alphas") {
    std::mt19937_64 rng(314159);
    for (int trial = 0; trial < 50; ++trial) {
      StepFunction f1(mesh), f2(mesh);
      for (auto& v : f1.values) v = 0.05 + double(rng() % 1000) / 250.0;
      for (auto& v : f2.values) v = 0.05 + double(rng() % 1000) / 250.0;
      GridShift grid{1, static_cast<std::uint32_t>(trial % 2)};
      double alpha = (trial % 3 == 0) ? 0.5 : 0.0;
      DominationReport rep = domination_report(f1, f2, exps_alpha(alpha), grid);
      CHECK(rep.maximal_ratio_min >= 1.0 - 1e-9);
      CHECK(rep.certificate_ratio <= rep.a + 1e-9);
      if (alpha > 0) CHECK(rep.integral_ratio_min >= 1.0 - 1e-9);
    }
  }
}

TEST_CASE("determinism of the construction") {
  Mesh mesh(1, 1, 5);
  std::mt19937_64 rng(888);
  StepFunction f1(mesh), f2(mesh);
  for (auto& v : f1.values) v = 0.1 + double(rng() % 100) / 40.0;
  for (auto& v : f2.values) v = 0.1 + double(rng() % 100) / 40.0;
  SparseFamily a = build_sparse(f1, f2, exps_alpha(0.5), GridShift{1, 1}, 0.0);
  SparseFamily b = build_sparse(f1, f2, exps_alpha(0.5), GridShift{1, 1}, 0.0);
  REQUIRE(a.size() == b.size());
  for (size_t i = 0; i < a.size(); ++i) {
    CHECK(a.cubes[i].scale == b.cubes[i].scale);
    CHECK(a.cubes[i].index == b.cubes[i].index);
    CHECK(a.exceptional[i] == b.exceptional[i]);
  }
}

TEST_CASE("csv serialization") {
  Mesh mesh(1, 1, 4);
  StepFunction f = indicator01(mesh);
  SparseFamily fam = build_sparse(f, f, exps_alpha(0.0), GridShift{1, 0}, 8.0);
  const std::string path = "sparse_test.csv", sidecar = "sparse_test_cells.csv";
  write_sparse_csv(fam, path, sidecar);
  std::FILE* fp = std::fopen(path.c_str(), "r");
  REQUIRE(fp != nullptr);
  char line[256];
  REQUIRE(std::fgets(line, sizeof line, fp));  // header
  REQUIRE(std::fgets(line, sizeof line, fp));
  int t = -1, k = 99;
  long long m0 = -1, cells = -1;
  CHECK(std::sscanf(line, "%d,%d,%lld,%lld", &t, &k, &m0, &cells) == 4);
  CHECK(t == 0);
  CHECK(k == -1);
  CHECK(m0 == 0);
  CHECK(cells == (long long)fam.exceptional[0].size());
  std::fclose(fp);
  std::remove(path.c_str());
  std::remove(sidecar.c_str());
}
