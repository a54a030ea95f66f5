#include "entroweight/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace ew {

LatticeMass LatticeMass::build(const Mesh& mesh, const std::vector<double>& lattice_values) {
  LatticeMass lm;
  lm.mesh = mesh;
  const std::int64_t R = mesh.lattice_per_axis();
  if (mesh.n == 1) {
    const double h = mesh.lattice_side_d();
    lm.prefix.assign(static_cast<size_t>(R) + 1, 0.0);
    for (std::int64_t i = 0; i < R; ++i)
      lm.prefix[size_t(i + 1)] = lm.prefix[size_t(i)] + lattice_values[size_t(i)] * h;
  } else {
    const double vol = mesh.lattice_side_d() * mesh.lattice_side_d();
    const std::int64_t P = R + 1;
    lm.prefix.assign(static_cast<size_t>(P * P), 0.0);
    for (std::int64_t y = 0; y < R; ++y)
      for (std::int64_t x = 0; x < R; ++x)
        lm.prefix[size_t((x + 1) + P * (y + 1))] = lattice_values[size_t(x + R * y)] * vol +
                                                   lm.prefix[size_t(x + P * (y + 1))] +
                                                   lm.prefix[size_t((x + 1) + P * y)] -
                                                   lm.prefix[size_t(x + P * y)];
  }
  return lm;
}

double LatticeMass::mass(const Mesh::LatticeRange& r) const {
  if (mesh.n == 1) return mass1(r.lo[0], r.hi[0]);
  const std::int64_t P = mesh.lattice_per_axis() + 1;
  return prefix[size_t(r.hi[0] + P * r.hi[1])] - prefix[size_t(r.lo[0] + P * r.hi[1])] -
         prefix[size_t(r.hi[0] + P * r.lo[1])] + prefix[size_t(r.lo[0] + P * r.lo[1])];
}

std::vector<double> interval_sup(const std::vector<const LatticeMass*>& masses, double alpha,
                                 double h, std::int64_t lo, std::int64_t hi) {
  const std::int64_t width = hi - lo;
  if (width <= 0) return {};
  const int m = static_cast<int>(masses.size());
  std::vector<double> out(static_cast<size_t>(width), 0.0);

#ifdef _OPENMP
  const int nthreads = omp_get_max_threads();
#else
  const int nthreads = 1;
#endif
  std::vector<std::vector<double>> partial(static_cast<size_t>(nthreads));

#pragma omp parallel
  {
#ifdef _OPENMP
    const int tid = omp_get_thread_num();
#else
    const int tid = 0;
#endif
    std::vector<double>& acc = partial[static_cast<size_t>(tid)];
    acc.assign(static_cast<size_t>(width), 0.0);
    std::vector<double> val(static_cast<size_t>(width));
    std::deque<std::int64_t> dq;

#pragma omp for schedule(dynamic, 8)
    for (std::int64_t s = 1; s <= width; ++s) {
      // value of the single interval [a, a+s) as a function of a
      const double len_factor = std::pow(double(s) * h, alpha - m);
      const std::int64_t a_hi = hi - s;  // inclusive
      for (std::int64_t a = lo; a <= a_hi; ++a) {
        double v = len_factor;
        for (int i = 0; i < m; ++i) v *= masses[size_t(i)]->mass1(a, a + s);
        val[size_t(a - lo)] = v;
      }
      // sliding maximum over a in [x-s+1, x] clipped to [lo, a_hi]
      dq.clear();
      std::int64_t next_a = lo;
      for (std::int64_t x = lo; x < hi; ++x) {
        const std::int64_t a_max = std::min(x, a_hi);
        while (next_a <= a_max) {
          const double v = val[size_t(next_a - lo)];
          while (!dq.empty() && val[size_t(dq.back() - lo)] <= v) dq.pop_back();
          dq.push_back(next_a);
          ++next_a;
        }
        while (!dq.empty() && dq.front() < x - s + 1) dq.pop_front();
        if (!dq.empty()) {
          double& slot = acc[size_t(x - lo)];
          slot = std::max(slot, val[size_t(dq.front() - lo)]);
        }
      }
    }
  }

  for (const auto& acc : partial) {
    if (acc.empty()) continue;
    for (std::int64_t i = 0; i < width; ++i)
      out[size_t(i)] = std::max(out[size_t(i)], acc[size_t(i)]);
  }
  return out;
}

namespace ref {

std::vector<double> interval_sup(const std::vector<const LatticeMass*>& masses, double alpha,
                                 double h, std::int64_t lo, std::int64_t hi) {
  const std::int64_t width = hi - lo;
  if (width <= 0) return {};
  const int m = static_cast<int>(masses.size());
  std::vector<double> out(static_cast<size_t>(width), 0.0);
  for (std::int64_t x = lo; x < hi; ++x) {
    double best = 0.0;
    for (std::int64_t a = lo; a <= x; ++a) {
      for (std::int64_t b = x + 1; b <= hi; ++b) {
        double v = std::pow(double(b - a) * h, alpha - m);
        for (int i = 0; i < m; ++i) v *= masses[size_t(i)]->mass1(a, b);
        best = std::max(best, v);
      }
    }
    out[size_t(x - lo)] = best;
  }
  return out;
}

}  // namespace ref

}  // namespace ew
