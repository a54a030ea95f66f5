#pragma once

#include "entroweight/exponents.hpp"
#include "entroweight/kernels.hpp"
#include "entroweight/step.hpp"

namespace ew {

// Smallest scale (largest cubes) worth enumerating for dyadic operator
// fields. Cubes inside the window have side at most 2^{L+1}; with the
// overlap policy the range extends far enough that every covering cube
// promised by the shifted-grid lemma (side <= 6x) is admissible.
int dyadic_scale_min(const Mesh& mesh, CubePolicy policy);

// Per-cube value |Q|^{alpha/n} * prod_i <f_i>_Q with f_i extended by zero
// outside the window (only relevant under the overlap policy).
class ProductAverager {
 public:
  ProductAverager(const Mesh& mesh, std::vector<const StepFunction*> inputs, double alpha);
  double cube_value(const DyadicCube& cube) const;
  const Mesh& mesh() const { return mesh_; }

 private:
  Mesh mesh_;
  double alpha_;
  std::vector<LatticeMass> masses_;
};

// x -> M(1_Q w)(x): uncentered maximal of the restricted weight over
// lattice cubes contained in the window. n = 1.
OperatorField hl_maximal(const StepFunction& w, const RationalBox& restrict_box);

// Continuum surrogate for M_alpha: sup over all lattice-aligned cubes inside
// the window (upper model for every shifted grid). n = 1.
OperatorField frac_maximal_oracle(const StepFunction& f1, const StepFunction& f2,
                                  const ExponentTuple& exps);

// M_alpha^D over a single shifted grid.
OperatorField frac_maximal_dyadic(const StepFunction& f1, const StepFunction& f2,
                                  const ExponentTuple& exps, const GridShift& grid,
                                  CubePolicy policy = CubePolicy::InsideWindow);

// M^d_{sigma}(f) = sup_Q prod_i <f_i>_Q^{sigma_i} 1_Q over grid cubes inside
// the window.
OperatorField weighted_dyadic_maximal(const StepFunction& f1, const StepFunction& f2,
                                      const StepFunction& sigma1, const StepFunction& sigma2,
                                      const GridShift& grid);

// I_alpha^D = sum_Q |Q|^{alpha/n} prod_i <f_i>_Q 1_Q, truncated to window
// scales. Requires alpha > 0.
OperatorField frac_integral_dyadic(const StepFunction& f1, const StepFunction& f2,
                                   const ExponentTuple& exps, const GridShift& grid,
                                   CubePolicy policy = CubePolicy::InsideWindow);

// Continuum I_alpha by midpoint quadrature over the (y_1, y_2) mesh, with a
// 3x-refined sub-rule (central sub-cell excluded) on the singular cell.
// n = 1, 0 < alpha < 2.
OperatorField frac_integral_quadrature(const StepFunction& f1, const StepFunction& f2,
                                       const ExponentTuple& exps);

}  // namespace ew
