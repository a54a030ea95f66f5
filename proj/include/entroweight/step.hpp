#pragma once

#include "entroweight/mesh.hpp"

#include <string>
#include <vector>

namespace ew {

// Compensated (Kahan) accumulator; all integral reductions run through this
// in a fixed cell order so reports do not depend on the thread schedule.
struct KahanSum {
  double sum = 0.0, comp = 0.0;
  void add(double x) {
    double y = x - comp;
    double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  double value() const { return sum; }
};

constexpr double kWeightFloor = 1e-12;

// Nonnegative piecewise-constant function on the base mesh.
struct StepFunction {
  Mesh mesh;
  std::vector<double> values;  // one per base cell, row-major (x fastest)

  StepFunction() = default;
  explicit StepFunction(const Mesh& m, double fill = 0.0)
      : mesh(m), values(static_cast<size_t>(m.base_cells()), fill) {}

  double at_flat(std::int64_t i) const { return values[static_cast<size_t>(i)]; }
  double at_point(double x, double y = 0.0) const {
    return values[static_cast<size_t>(mesh.base_index_of({x, y}))];
  }

  // Expand to the 3x-refined lattice (values constant on base cells).
  std::vector<double> lattice_values() const;
};

// Clamp below at the weight floor; weights must be a.e. positive for the
// logarithmic A_infty characteristic.
StepFunction clamp_weight(StepFunction f, double floor = kWeightFloor);

// Cellwise combinations.
StepFunction pointwise_product(const StepFunction& a, const StepFunction& b);
StepFunction pointwise_pow(const StepFunction& a, double e);
StepFunction pointwise_scale(const StepFunction& a, double c);

// Exact-geometry integral of f over a rational box inside the window.
double integrate(const StepFunction& f, const RationalBox& box);
double average(const StepFunction& f, const RationalBox& box);

// <f>_Q^sigma = int_Q f sigma / sigma(Q); throws on zero-mass boxes.
double weighted_average(const StepFunction& f, const StepFunction& sigma, const RationalBox& box);

// ||f||_{L^p(w)} over the window.
double lp_norm(const StepFunction& f, const StepFunction& w, double p);

// <log w^{-1}>_Q; throws if any overlapped cell value is <= 0.
double log_average(const StepFunction& w, const RationalBox& box);

// Lorentz norm of a finite list of (|value|, w-mass) pieces, evaluated in
// closed form between consecutive levels of the step function.
double lorentz_norm_pieces(std::vector<std::pair<double, double>> pieces, double p, double q);
double weak_norm_pieces(std::vector<std::pair<double, double>> pieces, double p);

double lorentz_norm(const StepFunction& f, const StepFunction& w, double p, double q);

// Operator output sampled on the refined lattice.
struct OperatorField {
  Mesh mesh;
  std::vector<double> values;  // one per lattice cell
  std::string tag;

  OperatorField() = default;
  OperatorField(const Mesh& m, std::string tag_)
      : mesh(m), values(static_cast<size_t>(m.lattice_cells()), 0.0), tag(std::move(tag_)) {}

  double at_point(double x, double y = 0.0) const;
};

// L^q(w) norm of a field over the window; w lives on the base mesh.
double field_lq_norm(const OperatorField& field, const StepFunction& w, double q);
double field_lorentz_norm(const OperatorField& field, const StepFunction& w, double p, double q);
double field_weak_norm(const OperatorField& field, const StepFunction& w, double p);
// Integral of field^e over a lattice-aligned rational box.
double field_integrate_pow(const OperatorField& field, const RationalBox& box, double e);

// CSV layout: header "n,L,J" (fields prepend "tag,<tag>"), then
// "cell_index,value" per cell.
void write_step_csv(const StepFunction& f, const std::string& path);
StepFunction read_step_csv(const std::string& path);
void write_field_csv(const OperatorField& f, const std::string& path);

}  // namespace ew
