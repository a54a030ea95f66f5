#include "entroweight/operators.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ew {

namespace {

template <typename Fn>
void for_each_range_cell(const Mesh& mesh, const Mesh::LatticeRange& r, Fn&& fn) {
  if (r.empty(mesh.n)) return;
  if (mesh.n == 1) {
    for (std::int64_t i = r.lo[0]; i < r.hi[0]; ++i) fn(static_cast<size_t>(i));
  } else {
    const std::int64_t R = mesh.lattice_per_axis();
    for (std::int64_t y = r.lo[1]; y < r.hi[1]; ++y)
      for (std::int64_t x = r.lo[0]; x < r.hi[0]; ++x) fn(static_cast<size_t>(x + R * y));
  }
}

void require_1d(const Mesh& mesh, const char* what) {
  if (mesh.n != 1)
    throw std::logic_error(std::string(what) + ": lattice supremum implemented for n = 1 only");
}

}  // namespace

int dyadic_scale_min(const Mesh& mesh, CubePolicy policy) {
  return policy == CubePolicy::InsideWindow ? -(mesh.L + 1) : -(mesh.L + 4);
}

ProductAverager::ProductAverager(const Mesh& mesh, std::vector<const StepFunction*> inputs,
                                 double alpha)
    : mesh_(mesh), alpha_(alpha) {
  masses_.reserve(inputs.size());
  for (const StepFunction* f : inputs) masses_.push_back(LatticeMass::build(mesh, f->lattice_values()));
}

double ProductAverager::cube_value(const DyadicCube& cube) const {
  const Mesh::LatticeRange r = mesh_.lattice_range(cube_box(cube));
  if (r.empty(mesh_.n)) return 0.0;
  const double side = to_double(pow2(-cube.scale));
  const double vol = std::pow(side, mesh_.n);
  double v = std::pow(side, alpha_);
  for (const LatticeMass& m : masses_) v *= m.mass(r) / vol;
  return v;
}

OperatorField hl_maximal(const StepFunction& w, const RationalBox& restrict_box) {
  require_1d(w.mesh, "hl_maximal");
  const Mesh& mesh = w.mesh;
  const std::int64_t R = mesh.lattice_per_axis();
  // 1_Q w on the lattice: partially covered lattice cells carry the exact
  // overlap fraction, which keeps all interval masses exact.
  std::vector<double> lat = w.lattice_values();
  const Rational h = mesh.lattice_side();
  const Rational origin = -pow2(mesh.L);
  const Rational qlo = restrict_box.lo[0], qhi = restrict_box.hi[0];
  for (std::int64_t i = 0; i < R; ++i) {
    const Rational clo = origin + Rational(i) * h;
    const Rational ov = std::min(qhi, clo + h) - std::max(qlo, clo);
    if (ov <= 0)
      lat[size_t(i)] = 0.0;
    else if (ov < h)
      lat[size_t(i)] *= to_double(ov / h);
  }
  const LatticeMass mass = LatticeMass::build(mesh, lat);
  OperatorField out(mesh, "hl_maximal");
  out.values = interval_sup({&mass}, 0.0, mesh.lattice_side_d(), 0, R);
  return out;
}

OperatorField frac_maximal_oracle(const StepFunction& f1, const StepFunction& f2,
                                  const ExponentTuple& exps) {
  require_1d(f1.mesh, "frac_maximal_oracle");
  const Mesh& mesh = f1.mesh;
  const LatticeMass m1 = LatticeMass::build(mesh, f1.lattice_values());
  const LatticeMass m2 = LatticeMass::build(mesh, f2.lattice_values());
  OperatorField out(mesh, "frac_maximal_oracle");
  out.values = interval_sup({&m1, &m2}, exps.alpha, mesh.lattice_side_d(), 0,
                            mesh.lattice_per_axis());
  return out;
}

OperatorField frac_maximal_dyadic(const StepFunction& f1, const StepFunction& f2,
                                  const ExponentTuple& exps, const GridShift& grid,
                                  CubePolicy policy) {
  const Mesh& mesh = f1.mesh;
  const ProductAverager avg(mesh, {&f1, &f2}, exps.alpha);
  OperatorField out(mesh, "frac_maximal_dyadic");
  for (int k = dyadic_scale_min(mesh, policy); k <= mesh.J; ++k) {
    const std::vector<DyadicCube> cubes = enumerate_cubes(mesh.window(), grid, k, k, policy);
    const auto count = static_cast<std::int64_t>(cubes.size());
#pragma omp parallel for schedule(dynamic, 16)
    for (std::int64_t ci = 0; ci < count; ++ci) {
      const double v = avg.cube_value(cubes[size_t(ci)]);
      if (v <= 0.0) continue;
      for_each_range_cell(mesh, mesh.lattice_range(cube_box(cubes[size_t(ci)])),
                          [&](size_t cell) { out.values[cell] = std::max(out.values[cell], v); });
    }
  }
  return out;
}

OperatorField weighted_dyadic_maximal(const StepFunction& f1, const StepFunction& f2,
                                      const StepFunction& sigma1, const StepFunction& sigma2,
                                      const GridShift& grid) {
  const Mesh& mesh = f1.mesh;
  const LatticeMass mf1 = LatticeMass::build(mesh, pointwise_product(f1, sigma1).lattice_values());
  const LatticeMass mf2 = LatticeMass::build(mesh, pointwise_product(f2, sigma2).lattice_values());
  const LatticeMass ms1 = LatticeMass::build(mesh, sigma1.lattice_values());
  const LatticeMass ms2 = LatticeMass::build(mesh, sigma2.lattice_values());
  OperatorField out(mesh, "weighted_dyadic_maximal");
  bool degenerate = false;
  for (int k = dyadic_scale_min(mesh, CubePolicy::InsideWindow); k <= mesh.J; ++k) {
    const std::vector<DyadicCube> cubes = enumerate_cubes(mesh.window(), grid, k, k);
    const auto count = static_cast<std::int64_t>(cubes.size());
#pragma omp parallel for schedule(dynamic, 16)
    for (std::int64_t ci = 0; ci < count; ++ci) {
      const Mesh::LatticeRange r = mesh.lattice_range(cube_box(cubes[size_t(ci)]));
      const double s1 = ms1.mass(r), s2 = ms2.mass(r);
      if (s1 <= 0.0 || s2 <= 0.0) {
        degenerate = true;
        continue;
      }
      const double v = (mf1.mass(r) / s1) * (mf2.mass(r) / s2);
      for_each_range_cell(mesh, r,
                          [&](size_t cell) { out.values[cell] = std::max(out.values[cell], v); });
    }
  }
  if (degenerate)
    throw std::runtime_error("weighted_dyadic_maximal: degenerate weight (zero cube mass)");
  return out;
}

OperatorField frac_integral_dyadic(const StepFunction& f1, const StepFunction& f2,
                                   const ExponentTuple& exps, const GridShift& grid,
                                   CubePolicy policy) {
  if (exps.alpha <= 0.0)
    throw std::invalid_argument("frac_integral_dyadic: alpha must be positive");
  const Mesh& mesh = f1.mesh;
  const ProductAverager avg(mesh, {&f1, &f2}, exps.alpha);
  OperatorField out(mesh, "frac_integral_dyadic");
  for (int k = dyadic_scale_min(mesh, policy); k <= mesh.J; ++k) {
    const std::vector<DyadicCube> cubes = enumerate_cubes(mesh.window(), grid, k, k, policy);
    const auto count = static_cast<std::int64_t>(cubes.size());
#pragma omp parallel for schedule(dynamic, 16)
    for (std::int64_t ci = 0; ci < count; ++ci) {
      const double v = avg.cube_value(cubes[size_t(ci)]);
      if (v == 0.0) continue;
      for_each_range_cell(mesh, mesh.lattice_range(cube_box(cubes[size_t(ci)])),
                          [&](size_t cell) { out.values[cell] += v; });
    }
  }
  return out;
}

OperatorField frac_integral_quadrature(const StepFunction& f1, const StepFunction& f2,
                                       const ExponentTuple& exps) {
  require_1d(f1.mesh, "frac_integral_quadrature");
  const double alpha = exps.alpha;
  if (alpha <= 0.0 || alpha >= 2.0)
    throw std::invalid_argument("frac_integral_quadrature: need 0 < alpha < 2");
  const Mesh& mesh = f1.mesh;
  const std::int64_t B = mesh.base_per_axis();
  const double h = mesh.base_side_d();
  const double e = (alpha - 2.0) / 2.0;

  // Translation-invariant kernel table over base-cell index offsets:
  // K[d1][d2] is the midpoint quadrature weight int |y|^{alpha-2} over the
  // cell pair at offset (d1, d2) from the evaluation cell.
  const std::int64_t D = 2 * B - 1;
  std::vector<double> kernel(static_cast<size_t>(D * D));
#pragma omp parallel for schedule(static)
  for (std::int64_t d1 = -(B - 1); d1 <= B - 1; ++d1) {
    for (std::int64_t d2 = -(B - 1); d2 <= B - 1; ++d2) {
      double k;
      if (d1 == 0 && d2 == 0) {
        // Singular cell: 3x-refined sub-rule, central sub-cell excluded.
        const double hs = h / 3.0;
        double acc = 0.0;
        for (int s1 = -1; s1 <= 1; ++s1)
          for (int s2 = -1; s2 <= 1; ++s2) {
            if (s1 == 0 && s2 == 0) continue;
            const double r2 = (double(s1 * s1 + s2 * s2)) * hs * hs;
            acc += std::pow(r2, e) * hs * hs;
          }
        k = acc;
      } else {
        const double r2 = (double(d1) * d1 + double(d2) * d2) * h * h;
        k = std::pow(r2, e) * h * h;
      }
      kernel[static_cast<size_t>((d1 + B - 1) * D + (d2 + B - 1))] = k;
    }
  }

  // Nonzero supports keep indicator-type inputs cheap.
  std::vector<std::int64_t> sup1, sup2;
  for (std::int64_t c = 0; c < B; ++c) {
    if (f1.values[size_t(c)] != 0.0) sup1.push_back(c);
    if (f2.values[size_t(c)] != 0.0) sup2.push_back(c);
  }

  std::vector<double> base(static_cast<size_t>(B), 0.0);
#pragma omp parallel for schedule(dynamic, 4)
  for (std::int64_t i = 0; i < B; ++i) {
    KahanSum acc;
    for (std::int64_t c1 : sup1) {
      const double v1 = f1.values[size_t(c1)];
      const double* krow = &kernel[static_cast<size_t>((i - c1 + B - 1) * D + (B - 1))];
      for (std::int64_t c2 : sup2) acc.add(v1 * f2.values[size_t(c2)] * krow[i - c2]);
    }
    base[size_t(i)] = acc.value();
  }

  OperatorField out(mesh, "frac_integral_quadrature");
  for (std::int64_t i = 0; i < mesh.lattice_per_axis(); ++i)
    out.values[size_t(i)] = base[size_t(i / 3)];
  return out;
}

}  // namespace ew
