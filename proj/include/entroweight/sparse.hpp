#pragma once

#include "entroweight/operators.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace ew {

// Sparse subfamily of one shifted grid with explicit exceptional sets,
// stored as lattice-cell index lists so disjointness checks are exact.
struct SparseFamily {
  Mesh mesh;
  GridShift grid;
  std::vector<DyadicCube> cubes;                         // (scale, index) order
  std::vector<std::vector<std::int64_t>> exceptional;    // E(Q) per cube
  double selection_ratio = 0.0;                          // final a
  double active_threshold = 0.0;                         // a^{k_min}; 0 if empty

  size_t size() const { return cubes.size(); }
};

struct SparsityReport {
  bool pass = true;
  bool disjoint = true;
  struct Entry {
    std::int64_t cube_cells = 0;
    std::int64_t exceptional_cells = 0;
    bool measure_ok = true;     // |Q| <= 2|E(Q)|
    bool child_union_ok = true; // |union of strict subcubes| <= |Q|/2
  };
  std::vector<Entry> entries;
};

// Calderon-Zygmund stopping construction: for each level a^k attained by the
// truncated operator, select the maximal grid cubes Q inside the window with
// |Q|^{alpha/n} <f_1>_Q <f_2>_Q > a^k; retries with doubled a (at most 5)
// when the sparsity verification fails.
SparseFamily build_sparse(const StepFunction& f1, const StepFunction& f2,
                          const ExponentTuple& exps, const GridShift& grid, double a);

SparsityReport verify_sparse(const SparseFamily& family);

// T_{S,alpha}: localized average products on the exceptional sets.
OperatorField sparse_apply(const SparseFamily& family, const StepFunction& f1,
                           const StepFunction& f2, const ExponentTuple& exps);

// I_alpha^S: the same sum with 1_Q in place of 1_{E(Q)}.
OperatorField sparse_integral(const SparseFamily& family, const StepFunction& f1,
                              const StepFunction& f2, const ExponentTuple& exps);

struct DominationReport {
  double a = 0.0;
  // M_alpha^D / T_{S,alpha} over cells with positive denominator.
  double maximal_ratio_min = 0.0, maximal_ratio_max = 0.0;
  // max of the same ratio over the active set {M > a^{k_min}}.
  double certificate_ratio = 0.0;
  // I_alpha^D / T_{S,alpha} ratio range (reported, alpha > 0 only).
  double integral_ratio_min = 0.0, integral_ratio_max = 0.0;
  size_t family_size = 0;
};

DominationReport domination_report(const StepFunction& f1, const StepFunction& f2,
                                   const ExponentTuple& exps, const GridShift& grid,
                                   double a = 0.0 /* 0 = default 2^{mn+1} */);

// CSV row per cube: "t,k,m,|E(Q)|_cells"; the sidecar lists E(Q) cells.
void write_sparse_csv(const SparseFamily& family, const std::string& path,
                      const std::string& sidecar_path);

}  // namespace ew
