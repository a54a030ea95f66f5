#include "entroweight/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

namespace ew {

namespace {

std::string fnv_digest(const std::string& text) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", (unsigned long long)h);
  return buf;
}

std::string config_digest(const SuiteConfig& cfg, const Mesh& mesh) {
  return fnv_digest(cfg.id + "|" + cfg.f1.str() + cfg.f2.str() + cfg.s1.str() + cfg.s2.str() +
                    cfg.s3.str() + "|n" + std::to_string(mesh.n) + "L" + std::to_string(mesh.L) +
                    "J" + std::to_string(mesh.J));
}

double safe_ratio(double lhs, double rhs) {
  if (lhs == 0.0) return 0.0;
  if (rhs == 0.0) return std::numeric_limits<double>::infinity();
  return lhs / rhs;
}

OperatorField grid_sup_field(const StepFunction& g1, const StepFunction& g2,
                             const ExponentTuple& exps, bool integral, CubePolicy policy) {
  const Mesh& mesh = g1.mesh;
  OperatorField out(mesh, integral ? "I_alpha_grids" : "M_alpha_grids");
  for (unsigned mask = 0; mask < (1u << mesh.n); ++mask) {
    GridShift t{mesh.n, mask};
    OperatorField part = integral ? frac_integral_dyadic(g1, g2, exps, t, policy)
                                  : frac_maximal_dyadic(g1, g2, exps, t, policy);
    for (size_t i = 0; i < out.values.size(); ++i)
      out.values[i] = std::max(out.values[i], part.values[i]);
  }
  return out;
}

}  // namespace

Materialized materialize(const SuiteConfig& cfg, const Mesh& mesh) {
  return Materialized{make_density(cfg.f1, mesh), make_density(cfg.f2, mesh),
                      make_weight(cfg.s1, mesh), make_weight(cfg.s2, mesh),
                      make_weight(cfg.s3, mesh)};
}

EpsilonSpec default_eps(double r) {
  EpsilonSpec e;
  e.family = EpsilonSpec::Family::LogPower;
  e.c = 1.0;
  e.s = 2.0 / r;
  return e;
}

VerificationReport verify_maximal_bound(const StepFunction& f1, const StepFunction& f2,
                                        const StepFunction& s1, const StepFunction& s2,
                                        const StepFunction& w, const ExponentTuple& exps,
                                        const EpsilonSpec& eps, const HarnessConstants& hc) {
  VerificationReport rep;
  rep.harness = "thm14";
  rep.J = w.mesh.J;
  StepFunction g1 = pointwise_product(f1, s1), g2 = pointwise_product(f2, s2);
  OperatorField field = frac_maximal_oracle(g1, g2, exps);
  rep.lhs = field_lq_norm(field, w, exps.q);
  ConstantReport ceil = global_constant(ConstantKind::Ceiling, w, s1, s2, exps, {eps});
  const double norms = lp_norm(f1, s1, exps.p1) * lp_norm(f2, s2, exps.p2);
  rep.rhs = ceil.sup * norms;
  rep.ratio = safe_ratio(rep.lhs, rep.rhs);
  rep.pass = rep.ratio <= hc.c_harness;
  rep.breakdown = {{"ceiling", ceil.sup}, {"norm_product", norms}};
  return rep;
}

VerificationReport verify_integral_bound(const StepFunction& f1, const StepFunction& f2,
                                         const StepFunction& s1, const StepFunction& s2,
                                         const StepFunction& w, const ExponentTuple& exps,
                                         const EpsilonSpec& eps1, const EpsilonSpec& eps2,
                                         const EpsilonSpec& eta, bool continuum,
                                         const HarnessConstants& hc) {
  if (exps.q <= 1.0) throw std::domain_error("thm15: needs q > 1");
  if (continuum && exps.alpha <= 0.0)
    throw std::domain_error("thm15: continuum mode needs alpha > 0");
  VerificationReport rep;
  rep.harness = continuum ? "thm15-continuum" : "thm15-dyadic";
  rep.J = w.mesh.J;
  StepFunction g1 = pointwise_product(f1, s1), g2 = pointwise_product(f2, s2);
  OperatorField field = continuum
                            ? frac_integral_quadrature(g1, g2, exps)
                            : grid_sup_field(g1, g2, exps, true, CubePolicy::InsideWindow);
  rep.lhs = field_lq_norm(field, w, exps.q);
  ConstantReport floor =
      global_constant(ConstantKind::Floor, w, s1, s2, exps, {eps1, eps2, eta});
  const double norms = lp_norm(f1, s1, exps.p1) * lp_norm(f2, s2, exps.p2);
  rep.rhs = floor.sup * norms;
  rep.ratio = safe_ratio(rep.lhs, rep.rhs);
  rep.pass = rep.ratio <= hc.c_harness;
  rep.breakdown = {{"floor", floor.sup}, {"norm_product", norms}};
  return rep;
}

VerificationReport verify_testing_bound(const StepFunction& s1, const StepFunction& s2,
                                        const StepFunction& s3, const ExponentTuple& exps,
                                        const std::vector<EpsilonSpec>& eps_i,
                                        const SparseFamily& S, const StepFunction& f1,
                                        const StepFunction& f2, const HarnessConstants& hc) {
  exps.validate_triple();
  if (eps_i.size() != 3) throw std::invalid_argument("thm16: three epsilon specs expected");
  VerificationReport rep;
  rep.harness = "thm16";
  rep.J = s1.mesh.J;
  ExponentTuple e = exps;
  e.q = e.p3d();  // the testing theorem works in L^{p_3'}(sigma_3)
  if (e.q < e.p()) throw std::domain_error("thm16: p_3' below p; triple out of range");

  static const std::array<std::array<int, 3>, 6> perms{
      {{1, 2, 3}, {2, 1, 3}, {1, 3, 2}, {3, 1, 2}, {2, 3, 1}, {3, 2, 1}}};
  double worst = 0.0;
  double strong_sum = 0.0, weak_sum = 0.0;
  int weak_triples = 0;
  bool pass = true;
  for (const auto& t : perms) {
    ConstantReport test = sawyer_testing(S, s1, s2, s3, e, t);
    ConstantReport bracket =
        global_constant(ConstantKind::Bracket, s3, s1, s2, e, {eps_i[size_t(t[0] - 1)]}, t);
    const double pkd = ExponentTuple::dual(e.pi(t[2]));
    const double bound = std::pow(bracket.sup, 1.0 / pkd);
    const double r = safe_ratio(test.sup, bound);
    worst = std::max(worst, r);
    pass = pass && r <= hc.c_harness;
    const std::string tag =
        std::to_string(t[0]) + std::to_string(t[1]) + std::to_string(t[2]);
    rep.breakdown.emplace_back("testing_" + tag, test.sup);
    rep.breakdown.emplace_back("bracket_pow_" + tag, bound);
    strong_sum += test.sup;
    if (t[0] != 3) {
      weak_sum += test.sup;
      ++weak_triples;
      rep.breakdown.emplace_back("weak_triple_" + tag, test.sup);
    }
  }
  rep.breakdown.emplace_back("weak_triples", double(weak_triples));

  StepFunction g1 = pointwise_product(f1, s1), g2 = pointwise_product(f2, s2);
  OperatorField field = sparse_integral(S, g1, g2, e);
  const double norms = lp_norm(f1, s1, e.p1) * lp_norm(f2, s2, e.p2);
  const double strong_lhs = field_lq_norm(field, s3, e.q);
  const double weak_lhs = field_weak_norm(field, s3, e.q);
  const double strong_ratio = safe_ratio(strong_lhs, strong_sum * norms);
  const double weak_ratio = safe_ratio(weak_lhs, weak_sum * norms);
  pass = pass && strong_ratio <= hc.c_harness && weak_ratio <= hc.c_harness;
  rep.breakdown.emplace_back("strong_lhs", strong_lhs);
  rep.breakdown.emplace_back("strong_ratio", strong_ratio);
  rep.breakdown.emplace_back("weak_lhs", weak_lhs);
  rep.breakdown.emplace_back("weak_ratio", weak_ratio);
  rep.lhs = strong_lhs;
  rep.rhs = strong_sum * norms;
  rep.ratio = std::max({worst, strong_ratio, weak_ratio});
  rep.pass = pass;
  rep.note = "epsilon integrability tested with exponent 1/p_k' per triple "
             "(the proof's usage; the theorem statement says 1/p_i')";
  return rep;
}

CarlesonSequence make_tower_sequence(const Mesh& mesh, const GridShift& grid,
                                     const StepFunction& nu, double qp) {
  CarlesonSequence seq;
  seq.grid = grid;
  LatticeMass mass = LatticeMass::build(mesh, nu.lattice_values());
  // Walk from the top in-window cube down to scale J, always taking the
  // child containing the window's left-lower corner region.
  const int scale_min = dyadic_scale_min(mesh, CubePolicy::InsideWindow);
  auto top = enumerate_cubes(mesh.window(), grid, scale_min, scale_min);
  if (top.empty()) top = enumerate_cubes(mesh.window(), grid, scale_min + 1, scale_min + 1);
  if (top.empty()) throw std::runtime_error("make_tower_sequence: no window cubes");
  DyadicCube cur = top.front();
  while (true) {
    const double nuq = mass.mass(mesh.lattice_range(cube_box(cur)));
    seq.cubes.push_back(cur);
    seq.c.push_back(std::pow(nuq, qp) * std::pow(2.0, double(cur.scale - mesh.J)));
    if (cur.scale >= mesh.J) break;
    cur = children_of(cur).front();
  }
  return seq;
}

VerificationReport carleson_check(const StepFunction& s1, const StepFunction& s2,
                                  const StepFunction& f1, const StepFunction& f2,
                                  const ExponentTuple& exps, const CarlesonSequence& seq,
                                  const HarnessConstants& hc) {
  exps.validate();
  const Mesh& mesh = s1.mesh;
  VerificationReport rep;
  rep.harness = "carleson";
  rep.J = mesh.J;
  const double qp = exps.q / exps.p();
  StepFunction nu = make_nu(s1, s2, exps);
  LatticeMass nu_mass = LatticeMass::build(mesh, nu.lattice_values());
  LatticeMass m1 = LatticeMass::build(mesh, s1.lattice_values());
  LatticeMass m2 = LatticeMass::build(mesh, s2.lattice_values());
  LatticeMass g1 = LatticeMass::build(mesh, pointwise_product(f1, s1).lattice_values());
  LatticeMass g2 = LatticeMass::build(mesh, pointwise_product(f2, s2).lattice_values());

  std::vector<RationalBox> seq_boxes;
  seq_boxes.reserve(seq.cubes.size());
  for (const auto& c : seq.cubes) seq_boxes.push_back(cube_box(c));

  // Hypothesis constant A, exact over the enumerated window cubes.
  double A = 0.0;
  const int scale_min = dyadic_scale_min(mesh, CubePolicy::InsideWindow);
  for (const auto& qc : enumerate_cubes(mesh.window(), seq.grid, scale_min, mesh.J)) {
    RationalBox qbox = cube_box(qc);
    double sum = 0.0;
    for (size_t i = 0; i < seq.cubes.size(); ++i)
      if (qbox.contains(seq_boxes[i])) sum += seq.c[i];
    if (sum == 0.0) continue;
    const double nuq = nu_mass.mass(mesh.lattice_range(qbox));
    if (nuq <= 0.0) throw std::runtime_error("carleson_check: zero nu mass");
    A = std::max(A, sum / std::pow(nuq, qp));
  }

  KahanSum lhs;
  for (size_t i = 0; i < seq.cubes.size(); ++i) {
    if (seq.c[i] == 0.0) continue;
    auto r = mesh.lattice_range(seq_boxes[i]);
    const double d1 = m1.mass(r), d2 = m2.mass(r);
    if (d1 <= 0.0 || d2 <= 0.0) throw std::runtime_error("carleson_check: zero sigma mass");
    lhs.add(seq.c[i] * std::pow((g1.mass(r) / d1) * (g2.mass(r) / d2), exps.q));
  }

  OperatorField md = weighted_dyadic_maximal(f1, f2, s1, s2, seq.grid);
  const double lorentz = field_lorentz_norm(md, nu, exps.p(), exps.q);
  const double middle = A * std::pow(lorentz, exps.q);
  const double norms = lp_norm(f1, s1, exps.p1) * lp_norm(f2, s2, exps.p2);
  const double right = A * std::pow(norms, exps.q);

  const double r1 = safe_ratio(lhs.value(), middle);
  const double r2 = safe_ratio(middle, right);
  rep.lhs = lhs.value();
  rep.rhs = right;
  rep.ratio = std::max(r1, r2);
  rep.pass = r1 <= hc.c_emb && r2 <= hc.c_emb2;
  rep.breakdown = {{"A", A},           {"lhs", lhs.value()}, {"middle", middle},
                   {"right", right},   {"ratio_first", r1},  {"ratio_second", r2},
                   {"lorentz", lorentz}};
  return rep;
}

VerificationReport packing_check(const SparseFamily& S, const StepFunction& sigma,
                                 const EpsilonSpec& eps, double r, double eps_power,
                                 const HarnessConstants& hc) {
  if (!epsilon_check(eps, r))
    throw std::domain_error("packing_check: epsilon fails the integrability test");
  VerificationReport rep;
  rep.harness = "packing";
  rep.J = S.mesh.J;
  std::vector<RationalBox> boxes;
  std::vector<double> mass(S.size()), rho_v(S.size());
  boxes.reserve(S.size());
  LatticeMass m = LatticeMass::build(S.mesh, sigma.lattice_values());
  for (size_t i = 0; i < S.size(); ++i) {
    boxes.push_back(cube_box(S.cubes[i]));
    mass[i] = m.mass(S.mesh.lattice_range(boxes[i]));
    rho_v[i] = rho(sigma, boxes[i]);
  }
  double worst = 0.0;
  for (size_t top = 0; top < S.size(); ++top) {
    KahanSum sum;
    for (size_t i = 0; i < S.size(); ++i)
      if (boxes[top].contains(boxes[i]))
        sum.add(std::pow(mass[i], r) /
                (std::pow(rho_v[i], r) * std::pow(eps(std::max(rho_v[i], 1.0)), eps_power)));
    if (mass[top] <= 0.0) throw std::runtime_error("packing_check: zero top mass");
    worst = std::max(worst, sum.value() / std::pow(mass[top], r));
  }
  rep.lhs = worst;
  rep.rhs = hc.c_pack;
  rep.ratio = worst;
  rep.pass = worst <= hc.c_pack;
  rep.breakdown = {{"max_ratio", worst}, {"family_size", double(S.size())}};
  return rep;
}

VerificationReport equivalence_check(const StepFunction& f1, const StepFunction& f2,
                                     const ExponentTuple& exps, const HarnessConstants& hc) {
  exps.validate();
  VerificationReport rep;
  rep.harness = "equiv";
  rep.J = f1.mesh.J;
  const double upper = std::pow(6.0, double(exps.m * exps.n) - exps.alpha);
  OperatorField oracle = frac_maximal_oracle(f1, f2, exps);
  OperatorField grids = grid_sup_field(f1, f2, exps, false, CubePolicy::OverlapWindow);
  double rmin = 0.0, rmax = 0.0;
  bool first = true, ok = true;
  for (size_t i = 0; i < oracle.values.size(); ++i) {
    if (oracle.values[i] == 0.0 && grids.values[i] == 0.0) continue;
    if (grids.values[i] == 0.0) {
      ok = false;
      continue;
    }
    const double r = oracle.values[i] / grids.values[i];
    if (first) {
      rmin = rmax = r;
      first = false;
    } else {
      rmin = std::min(rmin, r);
      rmax = std::max(rmax, r);
    }
  }
  ok = ok && (first || (rmin >= 1.0 - 1e-9 && rmax <= upper + 1e-9));
  rep.breakdown = {{"m_ratio_min", rmin}, {"m_ratio_max", rmax}, {"m_upper", upper}};
  rep.ratio = rmax;
  rep.lhs = rmax;
  rep.rhs = upper;

  if (exps.alpha > 0.0) {
    OperatorField quad = frac_integral_quadrature(f1, f2, exps);
    OperatorField dyi = grid_sup_field(f1, f2, exps, true, CubePolicy::OverlapWindow);
    double imin = 0.0, imax = 0.0;
    first = true;
    for (size_t i = 0; i < quad.values.size(); ++i) {
      if (dyi.values[i] <= 0.0) continue;
      const double r = quad.values[i] / dyi.values[i];
      if (first) {
        imin = imax = r;
        first = false;
      } else {
        imin = std::min(imin, r);
        imax = std::max(imax, r);
      }
    }
    rep.breakdown.emplace_back("i_ratio_min", imin);
    rep.breakdown.emplace_back("i_ratio_max", imax);
  }
  rep.pass = ok;
  return rep;
}

VerificationReport run_harness(const std::string& harness, const SuiteConfig& cfg,
                               const Mesh& mesh, const HarnessConstants& hc) {
  Materialized m = materialize(cfg, mesh);
  VerificationReport rep;
  if (harness == "thm14") {
    rep = verify_maximal_bound(m.f1, m.f2, m.s1, m.s2, m.w, cfg.exps,
                               default_eps(cfg.exps.q), hc);
  } else if (harness == "thm15" || harness == "thm15-dyadic" || harness == "thm15-continuum") {
    const bool continuum = harness == "thm15-continuum";
    rep = verify_integral_bound(m.f1, m.f2, m.s1, m.s2, m.w, cfg.exps,
                                default_eps(cfg.exps.p1), default_eps(cfg.exps.p2),
                                default_eps(cfg.exps.qd()), continuum, hc);
  } else if (harness == "thm16") {
    ExponentTuple e = cfg.exps;
    e.validate_triple();
    GridShift grid{mesh.n, 0};
    StepFunction g1 = pointwise_product(m.f1, m.s1), g2 = pointwise_product(m.f2, m.s2);
    SparseFamily S = build_sparse(g1, g2, e, grid, 0.0);
    if (S.size() == 0) {
      rep.harness = "thm16";
      rep.J = mesh.J;
      rep.note = "empty sparse family (zero inputs)";
    } else {
      std::vector<EpsilonSpec> eps{default_eps(1.0 / ExponentTuple::dual(e.p1)),
                                   default_eps(1.0 / ExponentTuple::dual(e.p2)),
                                   default_eps(1.0 / ExponentTuple::dual(e.p3))};
      rep = verify_testing_bound(m.s1, m.s2, m.w, e, eps, S, m.f1, m.f2, hc);
    }
  } else if (harness == "carleson") {
    GridShift grid{mesh.n, 0};
    StepFunction nu = make_nu(m.s1, m.s2, cfg.exps);
    CarlesonSequence seq =
        make_tower_sequence(mesh, grid, nu, cfg.exps.q / cfg.exps.p());
    rep = carleson_check(m.s1, m.s2, m.f1, m.f2, cfg.exps, seq, hc);
  } else if (harness == "packing") {
    GridShift grid{mesh.n, 0};
    StepFunction g1 = pointwise_product(m.f1, m.s1), g2 = pointwise_product(m.f2, m.s2);
    SparseFamily S = build_sparse(g1, g2, cfg.exps, grid, 0.0);
    StepFunction nu = make_nu(m.s1, m.s2, cfg.exps);
    const double r = cfg.exps.q / cfg.exps.p();
    rep = packing_check(S, nu, default_eps(std::max(r, 0.5)), r, cfg.exps.q, hc);
  } else if (harness == "equiv") {
    StepFunction g1 = pointwise_product(m.f1, m.s1), g2 = pointwise_product(m.f2, m.s2);
    rep = equivalence_check(g1, g2, cfg.exps, hc);
  } else {
    throw std::invalid_argument("run_harness: unknown harness " + harness);
  }
  rep.config_id = cfg.id;
  rep.digest = config_digest(cfg, mesh);
  return rep;
}

VerificationReport refinement_study(const std::string& harness, const SuiteConfig& cfg, int L,
                                    const std::vector<int>& js, const HarnessConstants& hc) {
  if (js.empty() || !std::is_sorted(js.begin(), js.end()))
    throw std::invalid_argument("refinement_study: J list must be increasing");
  VerificationReport rep;
  bool pass = true;
  for (size_t i = 0; i < js.size(); ++i) {
    Mesh mesh(1, L, js[i]);
    VerificationReport step = run_harness(harness, cfg, mesh, hc);
    if (i + 1 == js.size()) {
      std::vector<std::pair<int, double>> series = std::move(rep.refinement);
      rep = std::move(step);
      rep.refinement = std::move(series);
    } else {
      pass = pass && step.pass;
    }
    rep.refinement.emplace_back(js[i], i + 1 == js.size() ? rep.ratio : step.ratio);
  }
  // Non-convergence flag: ratio growing by more than the slack between
  // consecutive resolutions (ignoring near-zero ratios).
  for (size_t i = 0; i + 1 < rep.refinement.size(); ++i) {
    const double a = rep.refinement[i].second, b = rep.refinement[i + 1].second;
    if (a > 1e-12 && b > a * (1.0 + hc.refine_slack)) {
      pass = false;
      rep.note += (rep.note.empty() ? "" : "; ") + std::string("ratio grew J=") +
                  std::to_string(rep.refinement[i].first) + "->" +
                  std::to_string(rep.refinement[i + 1].first);
    }
  }
  rep.harness = harness + "-refine";
  rep.pass = rep.pass && pass;
  return rep;
}

std::vector<VerificationReport> run_suite(const std::string& suite, int L, int J,
                                          const HarnessConstants& hc) {
  std::vector<VerificationReport> out;
  Mesh mesh(1, L, J);
  for (const SuiteConfig& cfg : gallery_suite(suite)) {
    out.push_back(run_harness("thm14", cfg, mesh, hc));
    if (cfg.exps.alpha > 0.0 && cfg.exps.q > 1.0)
      out.push_back(run_harness("thm15", cfg, mesh, hc));
    bool triple_ok = cfg.exps.p3 > 1.0;
    if (triple_ok) {
      try {
        cfg.exps.validate_triple();
        ExponentTuple e = cfg.exps;
        triple_ok = e.p3d() >= e.p() - 1e-12;
      } catch (const std::invalid_argument&) {
        triple_ok = false;
      }
    }
    if (triple_ok) out.push_back(run_harness("thm16", cfg, mesh, hc));
    out.push_back(run_harness("carleson", cfg, mesh, hc));
    out.push_back(run_harness("equiv", cfg, mesh, hc));
  }
  return out;
}

}  // namespace ew
