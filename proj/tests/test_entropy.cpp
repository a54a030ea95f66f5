#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "entroweight/entropy.hpp"
#include "entroweight/gallery.hpp"

#include <cmath>
#include <random>

using namespace ew;

namespace {

RationalBox unit_q() { return RationalBox{{0}, {1}}; }

// 1 on [0,1/2), hi on [1/2,1), 1 elsewhere.
StepFunction split_weight(const Mesh& mesh, double hi) {
  StepFunction w(mesh, 1.0);
  for (std::int64_t i = 0; i < mesh.base_cells(); ++i) {
    RationalBox c = mesh.base_cell_box(i);
    if (c.lo[0] >= Rational(1, 2) && c.hi[0] <= 1) w.values[size_t(i)] = hi;
  }
  return w;
}

ExponentTuple exps222() {
  ExponentTuple e;
  e.p1 = e.p2 = 2.0;
  e.q = 1.0;
  e.p3 = 2.0;
  return e;
}

}  // namespace

TEST_CASE("a_inf_exp") {
  Mesh mesh(1, 1, 6);
  RationalBox q = unit_q();
  CHECK(a_inf_exp(StepFunction(mesh, 7.0), q) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(a_inf_exp(split_weight(mesh, 4.0), q) == doctest::Approx(1.25).epsilon(1e-9));
  CHECK_THROWS(a_inf_exp(StepFunction(mesh), q));
  // scaling invariance and Jensen lower bound on random weights
  std::mt19937_64 rng(41);
  for (int t = 0; t < 20; ++t) {
    StepFunction w(mesh);
    for (auto& v : w.values) v = 0.1 + double(rng() % 1000) / 200.0;
    double a = a_inf_exp(w, q);
    CHECK(a >= 1.0 - 1e-9);
    CHECK(a_inf_exp(pointwise_scale(w, 5.0), q) == doctest::Approx(a).epsilon(1e-12));
  }
}

TEST_CASE("joint characteristic") {
  Mesh mesh(1, 1, 6);
  ExponentTuple e = exps222();
  StepFunction one(mesh, 1.0);
  CHECK(joint_characteristic(one, one, one, unit_q(), e) == doctest::Approx(1.0));
  CHECK(joint_characteristic(one, one, one, RationalBox{{0}, {Rational(1, 2)}}, e) ==
        doctest::Approx(1.0));  // p = q, alpha = 0: exponents cancel
  StepFunction w = split_weight(mesh, 4.0);
  CHECK(joint_characteristic(w, w, w, unit_q(), e) == doctest::Approx(6.25).epsilon(1e-12));
  CHECK(joint_characteristic(pointwise_scale(w, 3.0), w, w, unit_q(), e) ==
        doctest::Approx(3.0 * 6.25).epsilon(1e-12));
}

TEST_CASE("rho") {
  RationalBox q = unit_q();
  SUBCASE("constant weight") {
    Mesh mesh(1, 1, 5);
    StepFunction w(mesh, 2.0);
    CHECK(rho(w, q) == doctest::Approx(1.0).epsilon(1e-12));
    EpsilonSpec identity{EpsilonSpec::Family::Power, 1.0, 1.0};
    CHECK(rho_eps(w, q, identity) == doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("two-cell closed form") {
    Mesh mesh(1, 1, 8);
    StepFunction w = split_weight(mesh, 3.0);
    const double exact = 1.0 + std::log(2.0) / 2.0;
    double r = rho(w, q);
    CHECK(r <= exact + 1e-12);
    CHECK(r == doctest::Approx(exact).epsilon(0.01));
    EpsilonSpec identity{EpsilonSpec::Family::Power, 1.0, 1.0};
    CHECK(rho_eps(w, q, identity) == doctest::Approx(r * r).epsilon(1e-12));
    CHECK(rho(pointwise_scale(w, 4.0), q) == doctest::Approx(r).epsilon(1e-12));
  }
  SUBCASE("rho >= 1 on random weights") {
    Mesh mesh(1, 1, 4);
    std::mt19937_64 rng(5150);
    for (int t = 0; t < 10; ++t) {
      StepFunction w(mesh);
      for (auto& v : w.values) v = 0.05 + double(rng() % 100) / 30.0;
      for (const DyadicCube& c : default_cube_family(mesh)) CHECK(rho(w, cube_box(c)) >= 1.0 - 1e-12);
    }
  }
}

TEST_CASE("gamma_entropy") {
  Mesh mesh(1, 1, 6);
  ExponentTuple e = exps222();  // p_12 = 1, p_3' = 2
  std::array<int, 3> t123{1, 2, 3};
  StepFunction one(mesh, 1.0);
  CHECK(gamma_entropy(one, one, unit_q(), e, t123) == doctest::Approx(1.0).epsilon(1e-12));
  // constant-weight closed form gamma = |Q|^{1 - p_k'/p_ij}
  CHECK(gamma_entropy(one, one, RationalBox{{0}, {Rational(1, 2)}}, e, t123) ==
        doctest::Approx(2.0).epsilon(1e-12));
  // homogeneity: degree 2 in a joint scaling (p_k'/p_ij = 2 here), invariant
  // under opposite scaling when p_i = p_j.
  StepFunction w = split_weight(mesh, 4.0);
  double g = gamma_entropy(w, w, unit_q(), e, t123);
  CHECK(gamma_entropy(pointwise_scale(w, 3.0), pointwise_scale(w, 3.0), unit_q(), e, t123) ==
        doctest::Approx(9.0 * g).epsilon(1e-9));
  CHECK(gamma_entropy(pointwise_scale(w, 3.0), pointwise_scale(w, 1.0 / 3.0), unit_q(), e, t123) ==
        doctest::Approx(g).epsilon(1e-9));
  CHECK_THROWS(gamma_entropy(StepFunction(mesh), one, unit_q(), e, t123));
}

TEST_CASE("epsilon_check") {
  CHECK(epsilon_check({EpsilonSpec::Family::LogPower, 1.0, 2.0}, 1.0));
  CHECK_FALSE(epsilon_check({EpsilonSpec::Family::Power, 3.0, 0.0}, 1.0));
  CHECK_FALSE(epsilon_check({EpsilonSpec::Family::LogPower, 1.0, 0.5}, 2.0));
  CHECK(epsilon_check({EpsilonSpec::Family::Power, 1.0, 0.1}, 2.0));
}

TEST_CASE("global constants") {
  Mesh mesh(1, 1, 4);
  ExponentTuple e = exps222();
  StepFunction one(mesh, 1.0);
  SUBCASE("A_pq of Lebesgue is 1") {
    ConstantReport rep = global_constant(ConstantKind::JointAPQ, one, one, one, e);
    CHECK(rep.sup == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(rep.argmax >= 0);
    double mx = 0;
    for (double v : rep.per_cube) mx = std::max(mx, v);
    CHECK(rep.sup == mx);
  }
  SUBCASE("ceiling rejects non-integrable epsilon") {
    EpsilonSpec flat{EpsilonSpec::Family::Power, 1.0, 0.0};
    CHECK_THROWS_AS(global_constant(ConstantKind::Ceiling, one, one, one, e, {flat}),
                    std::domain_error);
  }
  SUBCASE("ceiling of Lebesgue is 1") {
    EpsilonSpec eps{EpsilonSpec::Family::LogPower, 1.0, 2.0 / e.q};
    ConstantReport rep = global_constant(ConstantKind::Ceiling, one, one, one, e, {eps});
    CHECK(rep.sup == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("Remark 1.2-style chains hold per cube") {
  Mesh mesh(1, 1, 4);
  ExponentTuple e = exps222();
  GallerySpec c1, c2, c3;
  c1.family = GallerySpec::Family::DyadicRandom;
  c1.seed = 3;
  c2.family = GallerySpec::Family::Bump;
  c2.a = 2.0;
  c3.family = GallerySpec::Family::Random;
  c3.a = 0.2;
  c3.seed = 4;
  StepFunction s1 = make_weight(c1, mesh), s2 = make_weight(c2, mesh), w = make_weight(c3, mesh);
  auto cubes = default_cube_family(mesh);
  auto get = [&](ConstantKind k) {
    return global_constant(k, w, s1, s2, e, {}, {1, 2, 3}, cubes);
  };
  ConstantReport hinf = get(ConstantKind::HinfVector);
  ConstantReport rh = get(ConstantKind::ReverseHolder);
  ConstantReport ainf = get(ConstantKind::AinfNu);
  ConstantReport apq = get(ConstantKind::JointAPQ);
  ConstantReport apq_ainf = get(ConstantKind::JointAinfNu);
  ConstantReport apq_hinf = get(ConstantKind::JointHinf);
  const double p = e.p();
  for (size_t i = 0; i < cubes.size(); ++i) {
    CHECK(hinf.per_cube[i] <= rh.per_cube[i] * ainf.per_cube[i] * (1 + 1e-9));
    CHECK(apq_ainf.per_cube[i] <=
          apq.per_cube[i] * std::pow(ainf.per_cube[i], 1.0 / p) * (1 + 1e-9));
    CHECK(apq_ainf.per_cube[i] <= apq_hinf.per_cube[i] * (1 + 1e-9));
    CHECK(apq_hinf.per_cube[i] <=
          std::pow(rh.per_cube[i], 1.0 / p) * apq_ainf.per_cube[i] * (1 + 1e-9));
  }
}

TEST_CASE("sawyer_testing") {
  Mesh mesh(1, 1, 5);
  ExponentTuple e = exps222();
  GridShift d0{1, 0};
  auto singleton = [&](const DyadicCube& r) {
    SparseFamily fam;
    fam.mesh = mesh;
    fam.grid = d0;
    fam.cubes.push_back(r);
    auto lr = mesh.lattice_range(cube_box(r), true);
    std::vector<std::int64_t> cells;
    for (std::int64_t i = lr.lo[0]; i < lr.hi[0]; ++i) cells.push_back(i);
    fam.exceptional.push_back(cells);
    return fam;
  };
  SUBCASE("unit cube, Lebesgue weights") {
    SparseFamily fam = singleton(DyadicCube{d0, 0, {0}});
    StepFunction one(mesh, 1.0);
    ConstantReport rep = sawyer_testing(fam, one, one, one, e, {1, 2, 3});
    CHECK(rep.sup == doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("single-cube closed form with constants") {
    SparseFamily fam = singleton(DyadicCube{d0, 1, {0}});  // R = [0, 1/2)
    StepFunction s1(mesh, 2.0), s2(mesh, 3.0), s3(mesh, 5.0);
    // |R|^{alpha/n + 1/p_1' - 1/p_2 - 1/p_3} (c_1 c_2 c_3)^{1/2} at p_i = 2
    const double expect = std::pow(0.5, 0.5 - 0.5 - 0.5) * std::sqrt(2.0 * 3.0 * 5.0);
    ConstantReport rep = sawyer_testing(fam, s1, s2, s3, e, {1, 2, 3});
    CHECK(rep.sup == doctest::Approx(expect).epsilon(1e-12));
  }
  SUBCASE("degenerate weight") {
    SparseFamily fam = singleton(DyadicCube{d0, 0, {0}});
    StepFunction one(mesh, 1.0);
    CHECK_THROWS(sawyer_testing(fam, one, StepFunction(mesh), one, e, {1, 2, 3}));
  }
}
