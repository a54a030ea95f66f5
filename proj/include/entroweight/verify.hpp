#pragma once

#include "entroweight/entropy.hpp"
#include "entroweight/gallery.hpp"

#include <string>
#include <utility>
#include <vector>

namespace ew {

struct HarnessConstants {
  double c_harness = 100.0;  // multiplicative slack standing in for "lesssim"
  double c_emb = 20.0;       // Carleson chain, first link
  double c_emb2 = 20.0;      // Carleson chain, second link
  double c_pack = 10.0;      // packing-claim slack
  double refine_slack = 0.10;
};

struct VerificationReport {
  std::string harness;
  std::string config_id;
  std::string digest;
  int J = 0;
  double lhs = 0.0, rhs = 0.0, ratio = 0.0;
  bool pass = true;
  std::string note;
  std::vector<std::pair<std::string, double>> breakdown;
  std::vector<std::pair<int, double>> refinement;  // J -> ratio
};

struct Materialized {
  StepFunction f1, f2, s1, s2, w;
};
Materialized materialize(const SuiteConfig& cfg, const Mesh& mesh);

// Default growth functions satisfying the integrability hypotheses:
// log-power with s chosen so that s * r = 2 for the respective test.
EpsilonSpec default_eps(double r);

// Theorem 1.4: ||M_alpha(f1 s1, f2 s2)||_{L^q(w)} vs ceiling * prod ||f_i||.
VerificationReport verify_maximal_bound(const StepFunction& f1, const StepFunction& f2,
                                        const StepFunction& s1, const StepFunction& s2,
                                        const StepFunction& w, const ExponentTuple& exps,
                                        const EpsilonSpec& eps,
                                        const HarnessConstants& hc = {});

// Theorem 1.5: ||I_alpha(f1 s1, f2 s2)||_{L^q(w)} vs floor * prod ||f_i||.
// continuum = true uses the quadrature I_alpha (n = 1, alpha > 0); otherwise
// the cellwise sup over shifted grids of I_alpha^D.
VerificationReport verify_integral_bound(const StepFunction& f1, const StepFunction& f2,
                                         const StepFunction& s1, const StepFunction& s2,
                                         const StepFunction& w, const ExponentTuple& exps,
                                         const EpsilonSpec& eps1, const EpsilonSpec& eps2,
                                         const EpsilonSpec& eta, bool continuum,
                                         const HarnessConstants& hc = {});

// Theorem 1.6 + the testing characterization: all six permutation triples
// T_{S,(i,j,k)} <= C bracket^{1/p_k'}, the strong display with I_alpha^S,
// and the weak display (level-sup norm) with the four triples i != 3.
VerificationReport verify_testing_bound(const StepFunction& s1, const StepFunction& s2,
                                        const StepFunction& s3, const ExponentTuple& exps,
                                        const std::vector<EpsilonSpec>& eps_i,
                                        const SparseFamily& S, const StepFunction& f1,
                                        const StepFunction& f2,
                                        const HarnessConstants& hc = {});

struct CarlesonSequence {
  GridShift grid;
  std::vector<DyadicCube> cubes;
  std::vector<double> c;
};

// c_Q = nu(Q)^{q/p} 2^{-(J - scale)} on a nested tower above the origin cell.
CarlesonSequence make_tower_sequence(const Mesh& mesh, const GridShift& grid,
                                     const StepFunction& nu, double qp);

// Carleson embedding chain: LHS <= c_emb * A ||M^d||^q_{L^{p,q}(nu)}
// <= c_emb2 * A prod ||f_i||^q, with A computed exactly over window cubes.
VerificationReport carleson_check(const StepFunction& s1, const StepFunction& s2,
                                  const StepFunction& f1, const StepFunction& f2,
                                  const ExponentTuple& exps, const CarlesonSequence& seq,
                                  const HarnessConstants& hc = {});

// Packing claim: for each top cube Q' of the family,
//   sum_{Q subset Q'} sigma(Q)^r / (rho_sigma(Q)^r eps(rho)^{eps_power})
//     <= C * sigma(Q')^r.
VerificationReport packing_check(const SparseFamily& S, const StepFunction& sigma,
                                 const EpsilonSpec& eps, double r, double eps_power,
                                 const HarnessConstants& hc = {});

// Pointwise equivalences: oracle M_alpha vs sup of grids within
// [1, 6^{mn - alpha}]; quadrature I_alpha vs sup of grids, range reported.
VerificationReport equivalence_check(const StepFunction& f1, const StepFunction& f2,
                                     const ExponentTuple& exps,
                                     const HarnessConstants& hc = {});

// Re-run a harness across resolutions; flags ratio growth beyond the slack.
VerificationReport refinement_study(const std::string& harness, const SuiteConfig& cfg, int L,
                                    const std::vector<int>& js,
                                    const HarnessConstants& hc = {});

// One harness of the given id on a materialized configuration.
VerificationReport run_harness(const std::string& harness, const SuiteConfig& cfg,
                               const Mesh& mesh, const HarnessConstants& hc = {});

// Every applicable harness on every configuration of the named gallery suite.
std::vector<VerificationReport> run_suite(const std::string& suite, int L, int J,
                                          const HarnessConstants& hc = {});

}  // namespace ew
