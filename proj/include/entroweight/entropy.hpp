#pragma once

#include "entroweight/operators.hpp"
#include "entroweight/sparse.hpp"

#include <array>
#include <string>
#include <vector>

namespace ew {

// Exponential A_infty characteristic on one cube: <w>_Q exp(<log w^{-1}>_Q).
double a_inf_exp(const StepFunction& w, const RationalBox& Q);

// Joint two-weight characteristic
//   A(Q) = |Q|^{1/q - 1/p + alpha/n} <w>_Q^{1/q} prod_i <sigma_i>_Q^{1/p_i'}.
double joint_characteristic(const StepFunction& w, const StepFunction& s1,
                            const StepFunction& s2, const RationalBox& Q,
                            const ExponentTuple& exps);

// Entropy functional rho_w(Q) = w(Q)^{-1} int_Q M(1_Q w); n = 1.
double rho(const StepFunction& w, const RationalBox& Q);
double rho_eps(const StepFunction& w, const RationalBox& Q, const EpsilonSpec& eps);

// gamma_{(i,j,k)}(Q): the local testing-side entropy functional
//   int_Q M_alpha(1_Q sigma_i, 1_Q sigma_j)^{p_k'/p_ij}
//     / ( int_Q sigma_i^{p_ij/p_i} sigma_j^{p_ij/p_j} )^{p_k'/p_ij},
// where M_alpha(g_1, g_2) = sup over subintervals P of Q of
// |P|^{alpha/n} <g_1>_P <g_2>_P. sigma arguments are passed in (i, j) order.
double gamma_entropy(const StepFunction& si, const StepFunction& sj, const RationalBox& Q,
                     const ExponentTuple& exps, const std::array<int, 3>& triple);

// nu_sigma = prod_i sigma_i^{p/p_i} on the base mesh (m = 2 factors; a third
// factor included when p3 is set and include_third is requested).
StepFunction make_nu(const StepFunction& s1, const StepFunction& s2,
                     const ExponentTuple& exps);

enum class ConstantKind {
  JointAPQ,       // sup_Q A(Q)
  JointAinfNu,    // sup_Q A(Q) A_inf^exp(nu; Q)^{1/p}
  JointHinf,      // sup_Q A(Q) prod_i A_inf^exp(sigma_i; Q)^{1/p_i}
  HinfVector,     // [sigma]_{H_p^inf} = sup_Q prod_i A_inf^exp(sigma_i; Q)^{p/p_i}
  ReverseHolder,  // [sigma]_{RH_p} = sup_Q nu(Q)^{-1} prod_i sigma_i(Q)^{p/p_i}
  AinfNu,         // sup_Q A_inf^exp(nu; Q)
  Ceiling,        // sup_Q A(Q) (rho_nu eps(rho_nu))^{1/p}
  Floor,          // sup_Q A(Q) (rho_w eta(rho_w))^{1/q'} prod_i (rho_i eps_i)^{1/p_i}
  Bracket,        // sup_Q (|Q|^{alpha/n}<s_i><s_j>)^{p_k'/p_ij'} <s_k>_Q
                  //       gamma_{(i,j,k)}(Q) eps_i(gamma_{(i,j,k)}(Q))
};

std::string kind_name(ConstantKind kind);

struct ConstantReport {
  ConstantKind kind = ConstantKind::JointAPQ;
  ExponentTuple exps;
  double sup = 0.0;
  std::ptrdiff_t argmax = -1;  // index into cubes
  std::vector<DyadicCube> cubes;
  std::vector<double> per_cube;
};

// Default cube family for global suprema: both shifted grids (n = 1) resp.
// all four (n = 2), window scales down to side 2^{L+1}.
std::vector<DyadicCube> default_cube_family(const Mesh& mesh);

// Global supremum of the selected local quantity over the cube family.
// Weight slots: w is the target weight (slot sigma_k for Bracket); s1, s2 the
// component weights. Epsilon slots by kind: Ceiling {eps}; Floor
// {eps1, eps2, eta}; Bracket {eps_i}. Throws std::domain_error when the
// symbolic integrability precondition of the requested constant fails.
ConstantReport global_constant(ConstantKind kind, const StepFunction& w,
                               const StepFunction& s1, const StepFunction& s2,
                               const ExponentTuple& exps,
                               const std::vector<EpsilonSpec>& eps = {},
                               const std::array<int, 3>& triple = {1, 2, 3},
                               std::vector<DyadicCube> cubes = {});

// Local Sawyer-type testing constant over the sparse family:
//   sup_{R in S} ( int_R (sum_{Q in S, Q subset R} |Q|^{alpha/n}
//     <sigma_j>_Q <sigma_k>_Q 1_Q)^{p_i'} sigma_i )^{1/p_i'}
//     / ( sigma_j(R)^{1/p_j} sigma_k(R)^{1/p_k} ),
// with weights indexed by the permutation triple (i, j, k).
ConstantReport sawyer_testing(const SparseFamily& S, const StepFunction& s1,
                              const StepFunction& s2, const StepFunction& s3,
                              const ExponentTuple& exps, const std::array<int, 3>& triple);

}  // namespace ew
