#include "entroweight/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <stdexcept>

namespace ew {

namespace {

using CubeKey = std::pair<int, std::vector<std::int64_t>>;

CubeKey key_of(const DyadicCube& c) { return {c.scale, c.index}; }

std::vector<std::int64_t> range_cells(const Mesh& mesh, const Mesh::LatticeRange& r) {
  std::vector<std::int64_t> out;
  if (r.empty(mesh.n)) return out;
  const std::int64_t R = mesh.lattice_per_axis();
  if (mesh.n == 1) {
    out.reserve(size_t(r.hi[0] - r.lo[0]));
    for (std::int64_t i = r.lo[0]; i < r.hi[0]; ++i) out.push_back(i);
  } else {
    out.reserve(size_t(r.cells(2)));
    for (std::int64_t j = r.lo[1]; j < r.hi[1]; ++j)
      for (std::int64_t i = r.lo[0]; i < r.hi[0]; ++i) out.push_back(j * R + i);
  }
  return out;
}

struct Candidate {
  DyadicCube cube;
  Mesh::LatticeRange range;
  double value;
};

// One stopping pass: the selected cubes for the given level set.
std::vector<size_t> select_levels(const std::vector<Candidate>& cands,
                                  const std::map<CubeKey, size_t>& lookup, double a,
                                  int k_min, int k_max) {
  std::set<size_t> picked;
  for (int k = k_max; k >= k_min; --k) {
    const double threshold = std::pow(a, double(k));
    // Maximal qualifying cubes at this level: a candidate is kept when no
    // strict ancestor also qualifies.
    std::set<size_t> qualifying;
    // Relative slack keeps rounding noise in the cube averages from
    // promoting a cube past a level boundary it sits exactly on.
    for (size_t i = 0; i < cands.size(); ++i)
      if (cands[i].value > threshold * (1.0 + 1e-9)) qualifying.insert(i);
    for (size_t i : qualifying) {
      bool maximal = true;
      DyadicCube walk = cands[i].cube;
      while (true) {
        DyadicCube up = parent_of(walk);
        auto it = lookup.find(key_of(up));
        if (it == lookup.end()) break;  // parent leaves the enumerated set
        if (qualifying.count(it->second)) {
          maximal = false;
          break;
        }
        walk = std::move(up);
      }
      if (maximal) picked.insert(i);
    }
  }
  return {picked.begin(), picked.end()};
}

SparseFamily assemble(const Mesh& mesh, const GridShift& grid,
                      const std::vector<Candidate>& cands, const std::vector<size_t>& picked,
                      double a, double active_threshold) {
  SparseFamily fam;
  fam.mesh = mesh;
  fam.grid = grid;
  fam.selection_ratio = a;
  fam.active_threshold = active_threshold;
  // Coarse-to-fine ownership: each lattice cell belongs to the innermost
  // selected cube containing it; E(Q) is the fiber of Q.
  std::vector<size_t> order(picked.begin(), picked.end());
  std::sort(order.begin(), order.end(), [&](size_t x, size_t y) {
    if (cands[x].cube.scale != cands[y].cube.scale) return cands[x].cube.scale < cands[y].cube.scale;
    return cands[x].cube.index < cands[y].cube.index;
  });
  std::vector<std::int64_t> owner(size_t(mesh.lattice_cells()), -1);
  for (size_t pos = 0; pos < order.size(); ++pos)
    for (std::int64_t cell : range_cells(mesh, cands[order[pos]].range))
      owner[size_t(cell)] = std::int64_t(pos);
  fam.cubes.reserve(order.size());
  fam.exceptional.assign(order.size(), {});
  for (size_t pos = 0; pos < order.size(); ++pos) fam.cubes.push_back(cands[order[pos]].cube);
  for (std::int64_t cell = 0; cell < mesh.lattice_cells(); ++cell)
    if (owner[size_t(cell)] >= 0) fam.exceptional[size_t(owner[size_t(cell)])].push_back(cell);
  return fam;
}

}  // namespace

SparseFamily build_sparse(const StepFunction& f1, const StepFunction& f2,
                          const ExponentTuple& exps, const GridShift& grid, double a) {
  exps.validate();
  const Mesh& mesh = f1.mesh;
  if (!(f2.mesh == mesh)) throw std::invalid_argument("build_sparse: mesh mismatch");
  if (a == 0.0) a = std::pow(2.0, double(exps.m * exps.n + 1));
  if (a <= 1.0) throw std::invalid_argument("build_sparse: need a > 1");

  ProductAverager avg(mesh, {&f1, &f2}, exps.alpha);
  const int scale_min = dyadic_scale_min(mesh, CubePolicy::InsideWindow);
  auto cubes = enumerate_cubes(mesh.window(), grid, scale_min, mesh.J, CubePolicy::InsideWindow);

  std::vector<Candidate> cands;
  cands.reserve(cubes.size());
  std::map<CubeKey, size_t> lookup;
  double vmax = 0.0, vmin_pos = 0.0;
  for (auto& c : cubes) {
    Candidate cand{c, mesh.lattice_range(cube_box(c)), 0.0};
    cand.value = avg.cube_value(c);
    if (cand.value > 0.0) {
      vmax = std::max(vmax, cand.value);
      vmin_pos = vmin_pos == 0.0 ? cand.value : std::min(vmin_pos, cand.value);
    }
    lookup.emplace(key_of(c), cands.size());
    cands.push_back(std::move(cand));
  }
  if (vmax == 0.0) {
    SparseFamily empty;
    empty.mesh = mesh;
    empty.grid = grid;
    empty.selection_ratio = a;
    return empty;
  }

  for (int attempt = 0; attempt < 6; ++attempt) {
    // Levels k with a^k in [vmin_pos, vmax): below that the selection is
    // stable (every positive cube qualifies and only maximal ones enter);
    // at or above vmax nothing qualifies.
    int k_max = int(std::floor(std::log(vmax) / std::log(a)));
    while (std::pow(a, double(k_max)) >= vmax) --k_max;
    while (std::pow(a, double(k_max + 1)) < vmax) ++k_max;
    // Bottom level strictly below the smallest positive value, so every
    // positive cube qualifies somewhere and enters under a maximal ancestor.
    int k_min = int(std::floor(std::log(vmin_pos) / std::log(a)));
    while (std::pow(a, double(k_min)) >= vmin_pos) --k_min;
    while (std::pow(a, double(k_min + 1)) < vmin_pos) ++k_min;
    k_min = std::min(k_min, k_max);

    auto picked = select_levels(cands, lookup, a, k_min, k_max);
    SparseFamily fam = assemble(mesh, grid, cands, picked, a, std::pow(a, double(k_min)));
    if (verify_sparse(fam).pass) return fam;
    a *= 2.0;
  }
  throw std::runtime_error("build_sparse: sparsity verification kept failing after retries");
}

SparsityReport verify_sparse(const SparseFamily& family) {
  SparsityReport rep;
  std::set<std::int64_t> seen;
  for (size_t i = 0; i < family.cubes.size(); ++i) {
    SparsityReport::Entry e;
    auto range = family.mesh.lattice_range(cube_box(family.cubes[i]));
    e.cube_cells = range.cells(family.mesh.n);
    e.exceptional_cells = std::int64_t(family.exceptional[i].size());
    for (std::int64_t cell : family.exceptional[i])
      if (!seen.insert(cell).second) rep.disjoint = false;
    e.measure_ok = e.cube_cells <= 2 * e.exceptional_cells;
    // E(Q) = Q minus the union of selected strict subcubes, so the child
    // union occupies cube_cells - exceptional_cells lattice cells.
    e.child_union_ok = (e.cube_cells - e.exceptional_cells) * 2 <= e.cube_cells;
    if (!e.measure_ok || !e.child_union_ok) rep.pass = false;
    rep.entries.push_back(e);
  }
  if (!rep.disjoint) rep.pass = false;
  return rep;
}

namespace {

OperatorField sparse_sum(const SparseFamily& family, const StepFunction& f1,
                         const StepFunction& f2, const ExponentTuple& exps,
                         bool exceptional_only, const char* tag) {
  exps.validate();
  const Mesh& mesh = family.mesh;
  if (!(f1.mesh == mesh) || !(f2.mesh == mesh))
    throw std::invalid_argument("sparse_apply: mesh mismatch");
  ProductAverager avg(mesh, {&f1, &f2}, exps.alpha);
  OperatorField out(mesh, tag);
  for (size_t i = 0; i < family.cubes.size(); ++i) {
    const double v = avg.cube_value(family.cubes[i]);
    if (v == 0.0) continue;
    if (exceptional_only) {
      for (std::int64_t cell : family.exceptional[i]) out.values[size_t(cell)] += v;
    } else {
      for (std::int64_t cell : range_cells(mesh, mesh.lattice_range(cube_box(family.cubes[i]))))
        out.values[size_t(cell)] += v;
    }
  }
  return out;
}

}  // namespace

OperatorField sparse_apply(const SparseFamily& family, const StepFunction& f1,
                           const StepFunction& f2, const ExponentTuple& exps) {
  return sparse_sum(family, f1, f2, exps, true, "T_S_alpha");
}

OperatorField sparse_integral(const SparseFamily& family, const StepFunction& f1,
                              const StepFunction& f2, const ExponentTuple& exps) {
  return sparse_sum(family, f1, f2, exps, false, "I_alpha_S");
}

DominationReport domination_report(const StepFunction& f1, const StepFunction& f2,
                                   const ExponentTuple& exps, const GridShift& grid, double a) {
  SparseFamily fam = build_sparse(f1, f2, exps, grid, a);
  DominationReport rep;
  rep.a = fam.selection_ratio;
  rep.family_size = fam.size();

  OperatorField t = sparse_apply(fam, f1, f2, exps);
  OperatorField mx = frac_maximal_dyadic(f1, f2, exps, grid);
  bool first = true;
  double cert = 0.0;
  for (size_t i = 0; i < t.values.size(); ++i) {
    if (t.values[i] <= 0.0) continue;
    const double r = mx.values[i] / t.values[i];
    if (first) {
      rep.maximal_ratio_min = rep.maximal_ratio_max = r;
      first = false;
    } else {
      rep.maximal_ratio_min = std::min(rep.maximal_ratio_min, r);
      rep.maximal_ratio_max = std::max(rep.maximal_ratio_max, r);
    }
    if (mx.values[i] > fam.active_threshold) cert = std::max(cert, r);
  }
  rep.certificate_ratio = cert;

  if (exps.alpha > 0.0) {
    // The level construction run against the summed operator selects the
    // same cubes: extra levels above the maximal-function range qualify
    // nothing new, so the family coincides with fam.
    OperatorField isum = frac_integral_dyadic(f1, f2, exps, grid);
    first = true;
    for (size_t i = 0; i < t.values.size(); ++i) {
      if (t.values[i] <= 0.0) continue;
      const double r = isum.values[i] / t.values[i];
      if (first) {
        rep.integral_ratio_min = rep.integral_ratio_max = r;
        first = false;
      } else {
        rep.integral_ratio_min = std::min(rep.integral_ratio_min, r);
        rep.integral_ratio_max = std::max(rep.integral_ratio_max, r);
      }
    }
  }
  return rep;
}

void write_sparse_csv(const SparseFamily& family, const std::string& path,
                      const std::string& sidecar_path) {
  FILE* f = std::fopen(path.c_str(), "w");
  if (!f) throw std::runtime_error("write_sparse_csv: cannot open " + path);
  std::fprintf(f, "t_mask,k,");
  for (int a = 0; a < family.mesh.n; ++a) std::fprintf(f, "m%d,", a);
  std::fprintf(f, "exceptional_cells\n");
  for (size_t i = 0; i < family.cubes.size(); ++i) {
    const auto& c = family.cubes[i];
    std::fprintf(f, "%u,%d,", c.shift.mask, c.scale);
    for (std::int64_t m : c.index) std::fprintf(f, "%lld,", (long long)m);
    std::fprintf(f, "%lld\n", (long long)family.exceptional[i].size());
  }
  std::fclose(f);

  f = std::fopen(sidecar_path.c_str(), "w");
  if (!f) throw std::runtime_error("write_sparse_csv: cannot open " + sidecar_path);
  std::fprintf(f, "cube,cell\n");
  for (size_t i = 0; i < family.exceptional.size(); ++i)
    for (std::int64_t cell : family.exceptional[i])
      std::fprintf(f, "%zu,%lld\n", i, (long long)cell);
  std::fclose(f);
}

}  // namespace ew
