#include "entroweight/step.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace ew {

namespace {

// Per-axis overlap table of a rational interval against the base cells.
struct AxisOverlap {
  std::vector<std::int64_t> cell;
  std::vector<double> len;
};

AxisOverlap axis_overlaps(const Mesh& mesh, const Rational& lo, const Rational& hi) {
  AxisOverlap out;
  const Rational side = mesh.base_side();
  const Rational origin = -pow2(mesh.L);
  Rational clo = std::max(lo, origin);
  Rational chi = std::min(hi, pow2(mesh.L));
  if (chi <= clo) return out;
  std::int64_t i0 = rat_floor((clo - origin) / side);
  std::int64_t i1 = rat_ceil((chi - origin) / side);
  i1 = std::min(i1, mesh.base_per_axis());
  for (std::int64_t i = i0; i < i1; ++i) {
    Rational cell_lo = origin + Rational(i) * side;
    Rational ov = std::min(chi, cell_lo + side) - std::max(clo, cell_lo);
    if (ov > 0) {
      out.cell.push_back(i);
      out.len.push_back(to_double(ov));
    }
  }
  return out;
}

template <typename Fn>
void for_each_overlap(const Mesh& mesh, const RationalBox& box, Fn&& fn) {
  AxisOverlap ox = axis_overlaps(mesh, box.lo[0], box.hi[0]);
  if (mesh.n == 1) {
    for (size_t i = 0; i < ox.cell.size(); ++i) fn(ox.cell[i], ox.len[i]);
    return;
  }
  AxisOverlap oy = axis_overlaps(mesh, box.lo[1], box.hi[1]);
  const std::int64_t B = mesh.base_per_axis();
  for (size_t j = 0; j < oy.cell.size(); ++j)
    for (size_t i = 0; i < ox.cell.size(); ++i)
      fn(ox.cell[i] + B * oy.cell[j], ox.len[i] * oy.len[j]);
}

}  // namespace

std::vector<double> StepFunction::lattice_values() const {
  const std::int64_t B = mesh.base_per_axis();
  const std::int64_t R = mesh.lattice_per_axis();
  std::vector<double> out(static_cast<size_t>(mesh.lattice_cells()));
  if (mesh.n == 1) {
    for (std::int64_t i = 0; i < R; ++i) out[static_cast<size_t>(i)] = values[static_cast<size_t>(i / 3)];
  } else {
    for (std::int64_t y = 0; y < R; ++y)
      for (std::int64_t x = 0; x < R; ++x)
        out[static_cast<size_t>(x + R * y)] = values[static_cast<size_t>(x / 3 + B * (y / 3))];
  }
  return out;
}

StepFunction clamp_weight(StepFunction f, double floor) {
  for (double& v : f.values) {
    if (!std::isfinite(v) || v < 0) throw std::invalid_argument("clamp_weight: invalid cell value");
    v = std::max(v, floor);
  }
  return f;
}

StepFunction pointwise_product(const StepFunction& a, const StepFunction& b) {
  if (!(a.mesh == b.mesh)) throw std::invalid_argument("pointwise_product: mesh mismatch");
  StepFunction out(a.mesh);
  for (size_t i = 0; i < out.values.size(); ++i) out.values[i] = a.values[i] * b.values[i];
  return out;
}

StepFunction pointwise_pow(const StepFunction& a, double e) {
  StepFunction out(a.mesh);
  for (size_t i = 0; i < out.values.size(); ++i) out.values[i] = std::pow(a.values[i], e);
  return out;
}

StepFunction pointwise_scale(const StepFunction& a, double c) {
  StepFunction out(a.mesh);
  for (size_t i = 0; i < out.values.size(); ++i) out.values[i] = c * a.values[i];
  return out;
}

double integrate(const StepFunction& f, const RationalBox& box) {
  KahanSum acc;
  for_each_overlap(f.mesh, box, [&](std::int64_t cell, double vol) {
    acc.add(f.values[static_cast<size_t>(cell)] * vol);
  });
  return acc.value();
}

double average(const StepFunction& f, const RationalBox& box) {
  return integrate(f, box) / to_double(box.volume());
}

double weighted_average(const StepFunction& f, const StepFunction& sigma, const RationalBox& box) {
  const double mass = integrate(sigma, box);
  if (mass <= 0) throw std::runtime_error("weighted_average: degenerate weight (zero mass)");
  return integrate(pointwise_product(f, sigma), box) / mass;
}

double lp_norm(const StepFunction& f, const StepFunction& w, double p) {
  if (p <= 0) throw std::invalid_argument("lp_norm: p must be positive");
  if (!(f.mesh == w.mesh)) throw std::invalid_argument("lp_norm: mesh mismatch");
  const double vol = std::pow(f.mesh.base_side_d(), f.mesh.n);
  KahanSum acc;
  for (size_t i = 0; i < f.values.size(); ++i)
    acc.add(std::pow(std::fabs(f.values[i]), p) * w.values[i] * vol);
  return std::pow(acc.value(), 1.0 / p);
}

double log_average(const StepFunction& w, const RationalBox& box) {
  KahanSum acc;
  for_each_overlap(w.mesh, box, [&](std::int64_t cell, double vol) {
    const double v = w.values[static_cast<size_t>(cell)];
    if (v <= 0) throw std::runtime_error("log_average: degenerate weight (nonpositive cell)");
    acc.add(-std::log(v) * vol);
  });
  return acc.value() / to_double(box.volume());
}

double lorentz_norm_pieces(std::vector<std::pair<double, double>> pieces, double p, double q) {
  if (p <= 0 || q <= 0) throw std::invalid_argument("lorentz_norm: p, q must be positive");
  std::erase_if(pieces, [](const auto& pr) { return pr.first <= 0 || pr.second <= 0; });
  if (pieces.empty()) return 0.0;
  std::sort(pieces.begin(), pieces.end());
  // Distribution W(lambda) = w({|f| > lambda}) is constant between
  // consecutive levels; integrate lambda^{q-1} in closed form.
  KahanSum acc;
  double lambda_prev = 0.0;
  double mass_above = 0.0;
  for (const auto& pr : pieces) mass_above += pr.second;
  size_t i = 0;
  while (i < pieces.size()) {
    const double level = pieces[i].first;
    // On (lambda_prev, level): W = mass of pieces with value >= level.
    acc.add(std::pow(mass_above, q / p) * (std::pow(level, q) - std::pow(lambda_prev, q)) / q);
    while (i < pieces.size() && pieces[i].first == level) {
      mass_above -= pieces[i].second;
      ++i;
    }
    lambda_prev = level;
  }
  return std::pow(acc.value(), 1.0 / q);
}

double weak_norm_pieces(std::vector<std::pair<double, double>> pieces, double p) {
  if (p <= 0) throw std::invalid_argument("weak_norm: p must be positive");
  std::erase_if(pieces, [](const auto& pr) { return pr.first <= 0 || pr.second <= 0; });
  if (pieces.empty()) return 0.0;
  std::sort(pieces.begin(), pieces.end());
  double mass_above = 0.0;
  for (const auto& pr : pieces) mass_above += pr.second;
  double best = 0.0;
  size_t i = 0;
  while (i < pieces.size()) {
    const double level = pieces[i].first;
    // sup_{lambda < level} lambda W(lambda)^{1/p} approached at lambda -> level.
    best = std::max(best, level * std::pow(mass_above, 1.0 / p));
    while (i < pieces.size() && pieces[i].first == level) {
      mass_above -= pieces[i].second;
      ++i;
    }
  }
  return best;
}

namespace {

std::vector<std::pair<double, double>> step_pieces(const std::vector<double>& values,
                                                   const StepFunction& w, double cellvol,
                                                   bool lattice) {
  std::vector<std::pair<double, double>> pieces;
  pieces.reserve(values.size());
  if (lattice) {
    const std::vector<double> wl = w.lattice_values();
    for (size_t i = 0; i < values.size(); ++i)
      pieces.emplace_back(std::fabs(values[i]), wl[i] * cellvol);
  } else {
    for (size_t i = 0; i < values.size(); ++i)
      pieces.emplace_back(std::fabs(values[i]), w.values[i] * cellvol);
  }
  return pieces;
}

}  // namespace

double lorentz_norm(const StepFunction& f, const StepFunction& w, double p, double q) {
  const double vol = std::pow(f.mesh.base_side_d(), f.mesh.n);
  return lorentz_norm_pieces(step_pieces(f.values, w, vol, false), p, q);
}

double OperatorField::at_point(double x, double y) const {
  const double origin = -std::ldexp(1.0, mesh.L);
  const double scale = 3.0 * std::ldexp(1.0, mesh.J);
  const std::int64_t R = mesh.lattice_per_axis();
  std::array<double, 2> pt{x, y};
  std::int64_t flat = 0;
  for (int a = mesh.n - 1; a >= 0; --a) {
    auto i = static_cast<std::int64_t>(std::floor((pt[a] - origin) * scale));
    i = std::max<std::int64_t>(0, std::min(R - 1, i));
    flat = flat * R + i;
  }
  return values[static_cast<size_t>(flat)];
}

double field_lq_norm(const OperatorField& field, const StepFunction& w, double q) {
  const double vol = std::pow(field.mesh.lattice_side_d(), field.mesh.n);
  const std::vector<double> wl = w.lattice_values();
  KahanSum acc;
  for (size_t i = 0; i < field.values.size(); ++i)
    acc.add(std::pow(field.values[i], q) * wl[i] * vol);
  return std::pow(acc.value(), 1.0 / q);
}

double field_lorentz_norm(const OperatorField& field, const StepFunction& w, double p, double q) {
  const double vol = std::pow(field.mesh.lattice_side_d(), field.mesh.n);
  return lorentz_norm_pieces(step_pieces(field.values, w, vol, true), p, q);
}

double field_weak_norm(const OperatorField& field, const StepFunction& w, double p) {
  const double vol = std::pow(field.mesh.lattice_side_d(), field.mesh.n);
  return weak_norm_pieces(step_pieces(field.values, w, vol, true), p);
}

double field_integrate_pow(const OperatorField& field, const RationalBox& box, double e) {
  const Mesh& mesh = field.mesh;
  const Mesh::LatticeRange r = mesh.lattice_range(box);
  if (r.empty(mesh.n)) return 0.0;
  const double vol = std::pow(mesh.lattice_side_d(), mesh.n);
  const std::int64_t R = mesh.lattice_per_axis();
  KahanSum acc;
  if (mesh.n == 1) {
    for (std::int64_t i = r.lo[0]; i < r.hi[0]; ++i)
      acc.add(std::pow(field.values[static_cast<size_t>(i)], e) * vol);
  } else {
    for (std::int64_t y = r.lo[1]; y < r.hi[1]; ++y)
      for (std::int64_t x = r.lo[0]; x < r.hi[0]; ++x)
        acc.add(std::pow(field.values[static_cast<size_t>(x + R * y)], e) * vol);
  }
  return acc.value();
}

void write_step_csv(const StepFunction& f, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("write_step_csv: cannot open " + path);
  os << f.mesh.n << "," << f.mesh.L << "," << f.mesh.J << "\n";
  char buf[32];
  for (size_t i = 0; i < f.values.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g", f.values[i]);
    os << i << "," << buf << "\n";
  }
}

StepFunction read_step_csv(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("read_step_csv: cannot open " + path);
  char comma;
  int n, L, J;
  if (!(is >> n >> comma >> L >> comma >> J))
    throw std::runtime_error("read_step_csv: bad header in " + path);
  StepFunction f(Mesh(n, L, J));
  size_t idx;
  double v;
  while (is >> idx >> comma >> v) {
    if (idx >= f.values.size()) throw std::runtime_error("read_step_csv: cell index out of range");
    f.values[idx] = v;
  }
  return f;
}

void write_field_csv(const OperatorField& f, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("write_field_csv: cannot open " + path);
  os << "tag," << f.tag << "\n";
  os << f.mesh.n << "," << f.mesh.L << "," << f.mesh.J << "\n";
  char buf[32];
  for (size_t i = 0; i < f.values.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g", f.values[i]);
    os << i << "," << buf << "\n";
  }
}

}  // namespace ew
