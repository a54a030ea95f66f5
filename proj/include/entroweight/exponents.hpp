#pragma once

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

namespace ew {

// Lebesgue exponent bundle (m = 2 throughout): alpha, p_1, p_2, the derived
// p with 1/p = 1/p_1 + 1/p_2, and the target exponent q with p <= q.
// p3 is carried for the three-weight testing setting, where q = p_3'.
struct ExponentTuple {
  int n = 1;
  int m = 2;
  double alpha = 0.0;
  double p1 = 2.0, p2 = 2.0;
  double q = 1.0;
  double p3 = 0.0;  // 0 = unset

  double p() const { return 1.0 / (1.0 / p1 + 1.0 / p2); }
  static double dual(double r) { return r / (r - 1.0); }
  double p1d() const { return dual(p1); }
  double p2d() const { return dual(p2); }
  double p3d() const { return dual(p3); }
  double qd() const { return dual(q); }

  double pi(int i) const {
    switch (i) {
      case 1: return p1;
      case 2: return p2;
      case 3: return p3;
    }
    throw std::invalid_argument("ExponentTuple: index out of range");
  }
  // 1/p_ij = 1/p_i + 1/p_j.
  double pij(int i, int j) const { return 1.0 / (1.0 / pi(i) + 1.0 / pi(j)); }

  void validate() const {
    if (n < 1 || n > 2) throw std::invalid_argument("exponents: n must be 1 or 2");
    if (alpha < 0 || alpha >= m * n) throw std::invalid_argument("exponents: need 0 <= alpha < mn");
    if (p1 <= 1 || p2 <= 1) throw std::invalid_argument("exponents: need 1 < p_i < inf");
    if (q <= 0 || q < p() - 1e-12) throw std::invalid_argument("exponents: need 0 < p <= q");
  }
  // Theorem 1.6 regime: pairwise 1/p_i + 1/p_j >= 1.
  void validate_triple() const {
    if (p3 <= 1) throw std::invalid_argument("exponents: p3 unset or out of range");
    const std::array<std::pair<int, int>, 3> pairs{{{1, 2}, {1, 3}, {2, 3}}};
    for (auto [i, j] : pairs)
      if (1.0 / pi(i) + 1.0 / pi(j) < 1.0 - 1e-12)
        throw std::invalid_argument("exponents: triple needs 1/p_i + 1/p_j >= 1 for i != j");
  }
};

// Monotone growth function on (1, inf) from the power-log family, extended to
// t = 1 by continuity. The integrability predicate is symbolic.
struct EpsilonSpec {
  enum class Family { Power, LogPower };
  Family family = Family::LogPower;
  double c = 1.0;  // c > 0
  double s = 1.0;  // s >= 0

  double operator()(double t) const {
    if (t < 1.0) throw std::domain_error("EpsilonSpec: argument below 1");
    return family == Family::Power ? c * std::pow(t, s) : c * std::pow(1.0 + std::log(t), s);
  }
  std::string str() const;
};

// Does int_1^inf dt / (t eps(t)^r) converge?
// Power family: iff s > 0.  Log-power family: iff s*r > 1.
bool epsilon_check(const EpsilonSpec& eps, double r);

}  // namespace ew
