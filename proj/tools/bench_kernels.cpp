// Compares the OpenMP sliding-window interval kernel against the serial
// brute-force reference on identical inputs.
#include "entroweight/kernels.hpp"
#include "entroweight/step.hpp"

#include <omp.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>

int main(int argc, char** argv) {
  const int J = argc > 1 ? std::atoi(argv[1]) : 7;
  ew::Mesh mesh(1, 1, J);
  std::mt19937_64 rng(12345);
  std::uniform_real_distribution<double> uni(0.1, 1.0);
  std::vector<double> v1(size_t(mesh.lattice_cells())), v2 = v1;
  for (auto& x : v1) x = uni(rng);
  for (auto& x : v2) x = uni(rng);
  ew::LatticeMass m1 = ew::LatticeMass::build(mesh, v1);
  ew::LatticeMass m2 = ew::LatticeMass::build(mesh, v2);
  const double h = mesh.lattice_side_d();
  const std::int64_t R = mesh.lattice_per_axis();

  using clock = std::chrono::steady_clock;
  auto t0 = clock::now();
  auto fast = ew::interval_sup({&m1, &m2}, 0.5, h, 0, R);
  auto t1 = clock::now();
  auto slow = ew::ref::interval_sup({&m1, &m2}, 0.5, h, 0, R);
  auto t2 = clock::now();

  double maxdiff = 0.0;
  for (size_t i = 0; i < fast.size(); ++i)
    maxdiff = std::max(maxdiff, std::abs(fast[i] - slow[i]));

  const double ms_fast = std::chrono::duration<double, std::milli>(t1 - t0).count();
  const double ms_slow = std::chrono::duration<double, std::milli>(t2 - t1).count();
  std::printf("cells=%lld threads=%d\n", (long long)R, omp_get_max_threads());
  std::printf("openmp sliding-window: %10.2f ms\n", ms_fast);
  std::printf("serial reference:      %10.2f ms\n", ms_slow);
  std::printf("speedup: %.2fx, max |diff| = %.3e\n", ms_slow / ms_fast, maxdiff);
  return maxdiff < 1e-12 ? 0 : 1;
}
