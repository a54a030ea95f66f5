#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "entroweight/gallery.hpp"
#include "entroweight/step.hpp"

#include <cmath>
#include <cstdio>
#include <random>

using namespace ew;

namespace {

RationalBox interval(Rational lo, Rational hi) { return RationalBox{{lo}, {hi}}; }

StepFunction indicator01(const Mesh& mesh) {
  GallerySpec g;
  g.family = GallerySpec::Family::Indicator;
  g.lo = 0;
  g.hi = 1;
  return make_density(g, mesh);
}

}  // namespace

TEST_CASE("integrate and average with exact overlaps") {
  Mesh mesh(1, 1, 4);
  StepFunction f = indicator01(mesh);
  RationalBox box = interval(Rational(-1, 6), Rational(1, 3));
  CHECK(integrate(f, box) == doctest::Approx(1.0 / 3).epsilon(1e-12));
  CHECK(average(f, box) == doctest::Approx(2.0 / 3).epsilon(1e-12));

  StepFunction zero(mesh);
  CHECK(integrate(zero, box) == 0.0);
  StepFunction one(mesh, 1.0);
  CHECK(integrate(one, interval(Rational(-5, 4), Rational(1, 2))) ==
        doctest::Approx(1.75).epsilon(1e-12));
}

TEST_CASE("weighted averages") {
  Mesh mesh(1, 1, 4);
  StepFunction sigma(mesh, 1.0), f(mesh);
  for (std::int64_t i = 0; i < mesh.base_cells(); ++i) {
    RationalBox c = mesh.base_cell_box(i);
    if (c.hi[0] <= Rational(1, 2) && c.lo[0] >= 0) f.values[size_t(i)] = 1.0;
    if (c.lo[0] >= Rational(1, 2) && c.hi[0] <= 1) sigma.values[size_t(i)] = 3.0;
  }
  RationalBox q = interval(0, 1);
  CHECK(weighted_average(StepFunction(mesh, 1.0), sigma, q) == doctest::Approx(1.0));
  CHECK(weighted_average(f, StepFunction(mesh, 1.0), q) == doctest::Approx(0.5));
  CHECK(weighted_average(f, sigma, q) == doctest::Approx(0.25));
  CHECK_THROWS(weighted_average(f, StepFunction(mesh), q));
}

TEST_CASE("lp norms") {
  Mesh mesh(1, 1, 8);
  StepFunction f = indicator01(mesh);
  StepFunction one(mesh, 1.0);
  CHECK(lp_norm(f, one, 2.0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(lp_norm(StepFunction(mesh), one, 2.0) == 0.0);
  GallerySpec pw;
  pw.family = GallerySpec::Family::Power;
  pw.a = 0.5;
  StepFunction w = make_weight(pw, mesh);
  CHECK(lp_norm(f, w, 1.0) == doctest::Approx(2.0 / 3).epsilon(1e-3));
}

TEST_CASE("lorentz norm indicator identities") {
  Mesh mesh(1, 1, 5);
  StepFunction f = indicator01(mesh);
  StepFunction one(mesh, 1.0);
  CHECK(lorentz_norm(f, one, 2.0, 1.0) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(lorentz_norm(f, one, 2.0, 2.0) ==
        doctest::Approx(std::pow(2.0, -0.5)).epsilon(1e-9));
  CHECK(lorentz_norm(StepFunction(mesh), one, 2.0, 2.0) == 0.0);
  // weak norm of an indicator: sup_v v * w(E)^{1/p} = |E|^{1/p}
  CHECK(weak_norm_pieces({{1.0, 1.0}}, 2.0) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("log averages") {
  Mesh mesh(1, 1, 4);
  StepFunction w(mesh, 1.0);
  RationalBox q = interval(0, 1);
  CHECK(log_average(w, q) == doctest::Approx(0.0));
  for (std::int64_t i = 0; i < mesh.base_cells(); ++i)
    if (mesh.base_cell_box(i).lo[0] >= Rational(1, 2) && mesh.base_cell_box(i).hi[0] <= 1)
      w.values[size_t(i)] = 4.0;
  CHECK(log_average(w, q) == doctest::Approx(-std::log(4.0) / 2).epsilon(1e-12));
  CHECK_THROWS(log_average(StepFunction(mesh), q));
}

TEST_CASE("integrate is additive over disjoint boxes") {
  Mesh mesh(1, 1, 5);
  std::mt19937_64 rng(99);
  StepFunction f(mesh);
  for (auto& v : f.values) v = double(rng() % 1000) / 100.0;
  RationalBox whole = interval(Rational(-3, 2), Rational(5, 4));
  RationalBox left = interval(Rational(-3, 2), Rational(-1, 6));
  RationalBox right = interval(Rational(-1, 6), Rational(5, 4));
  CHECK(integrate(f, whole) ==
        doctest::Approx(integrate(f, left) + integrate(f, right)).epsilon(1e-12));
}

TEST_CASE("csv round trip") {
  Mesh mesh(1, 0, 3);
  std::mt19937_64 rng(5);
  StepFunction f(mesh);
  for (auto& v : f.values) v = double(rng() % 997) / 131.0;
  const std::string path = "step_roundtrip_test.csv";
  write_step_csv(f, path);
  StepFunction g = read_step_csv(path);
  REQUIRE(g.mesh == mesh);
  for (size_t i = 0; i < f.values.size(); ++i) CHECK(f.values[i] == g.values[i]);
  std::remove(path.c_str());
}
