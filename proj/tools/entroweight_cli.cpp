#include "entroweight/report.hpp"
#include "entroweight/sparse.hpp"

#include <CLI11.hpp>
#include <json.hpp>
#include <omp.h>

#include <cstdlib>
#include <fstream>
#include <iostream>

namespace {

using nlohmann::json;

ew::GallerySpec spec_from_json(const json& j) {
  ew::GallerySpec g;
  const std::string fam = j.value("family", "constant");
  using F = ew::GallerySpec::Family;
  if (fam == "constant") g.family = F::Constant;
  else if (fam == "power") g.family = F::Power;
  else if (fam == "twocell") g.family = F::TwoCell;
  else if (fam == "bump") g.family = F::Bump;
  else if (fam == "cascade") g.family = F::DyadicRandom;
  else if (fam == "indicator") g.family = F::Indicator;
  else if (fam == "tent") g.family = F::Tent;
  else if (fam == "random") g.family = F::Random;
  else throw std::domain_error("unknown gallery family: " + fam);
  g.a = j.value("a", g.a);
  g.delta = j.value("delta", g.delta);
  g.lo = j.value("lo", g.lo);
  g.hi = j.value("hi", g.hi);
  g.center = j.value("center", g.center);
  g.radius = j.value("radius", g.radius);
  g.seed = j.value("seed", g.seed);
  return g;
}

struct CliConfig {
  int L = 1, J = 5;
  ew::SuiteConfig cfg;
};

CliConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::domain_error("cannot open config: " + path);
  json j = json::parse(in);
  if (j.value("schema_version", 1) != 1) throw std::domain_error("unsupported schema_version");
  CliConfig out;
  out.L = j.value("L", 1);
  out.J = j.value("J", 5);
  out.cfg.id = j.value("id", "cli");
  if (j.contains("f1")) out.cfg.f1 = spec_from_json(j["f1"]);
  if (j.contains("f2")) out.cfg.f2 = spec_from_json(j["f2"]);
  if (j.contains("s1")) out.cfg.s1 = spec_from_json(j["s1"]);
  if (j.contains("s2")) out.cfg.s2 = spec_from_json(j["s2"]);
  if (j.contains("s3")) out.cfg.s3 = spec_from_json(j["s3"]);
  if (j.contains("exps")) {
    const json& e = j["exps"];
    out.cfg.exps.alpha = e.value("alpha", 0.0);
    out.cfg.exps.p1 = e.value("p1", 2.0);
    out.cfg.exps.p2 = e.value("p2", 2.0);
    out.cfg.exps.q = e.value("q", 1.0);
    out.cfg.exps.p3 = e.value("p3", 0.0);
  }
  return out;
}

void emit(const std::string& out_path, const std::string& content) {
  if (out_path.empty())
    std::cout << content;
  else
    ew::write_text_atomic(out_path, content);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"entroweight: two-weight entropy bounds on discretized weight families"};
  app.require_subcommand(1);

  int threads = 0;
  std::string config_path, out_path;
  app.add_option("--threads", threads, "OpenMP thread count (0 = default)");
  app.add_option("--config", config_path, "JSON configuration file");
  app.add_option("--out", out_path, "output path (default: stdout)");

  auto* grid = app.add_subcommand("grid", "enumerate cubes / cover queries");
  int g_n = 1, g_L = 1, g_smin = 0, g_smax = 2;
  unsigned g_mask = 0;
  std::vector<double> g_cover;
  bool g_overlap = false;
  grid->add_option("--n", g_n);
  grid->add_option("--L", g_L);
  grid->add_option("--t", g_mask, "shift mask (bit i set: t_i = 1/3)");
  grid->add_option("--scale-min", g_smin);
  grid->add_option("--scale-max", g_smax);
  grid->add_flag("--overlap", g_overlap, "admit cubes overlapping the window");
  grid->add_option("--cover", g_cover, "lo hi per axis: report the covering cube")
      ->expected(2, 4);

  auto* op = app.add_subcommand("op", "evaluate an operator field to CSV");
  std::string op_name = "oracle";
  unsigned op_mask = 0;
  op->add_option("--op", op_name, "oracle|dyadic|integral|quadrature|sup-dyadic|sup-integral");
  op->add_option("--t", op_mask, "grid shift mask for dyadic operators");

  auto* sparse = app.add_subcommand("sparse", "build + verify + domination report");
  double sp_a = 0.0;
  unsigned sp_mask = 0;
  sparse->add_option("--a", sp_a, "level ratio (0 = default 2^{mn+1})");
  sparse->add_option("--t", sp_mask);

  auto* constants = app.add_subcommand("constants", "global constant to JSON");
  std::string kind_str = "A_pq";
  constants->add_option("--kind", kind_str,
                        "A_pq|A_pq_Ainf|A_pq_Hinf|H_p_inf|RH_p|Ainf_exp_nu|ceiling|floor|bracket");
  std::vector<int> kt{1, 2, 3};
  constants->add_option("--triple", kt, "permutation for bracket")->expected(3);

  auto* verify = app.add_subcommand("verify", "run one harness");
  std::string harness;
  verify->add_option("harness", harness, "thm14|thm15|thm16|carleson|packing|equiv")->required();

  auto* suite = app.add_subcommand("suite", "run a gallery suite end-to-end");
  std::string suite_name = "smoke";
  int su_L = 1, su_J = 4;
  std::string su_csv, su_plot;
  suite->add_option("--suite", suite_name, "smoke|full");
  suite->add_option("--L", su_L);
  suite->add_option("--J", su_J);
  suite->add_option("--csv", su_csv, "also write the flat CSV here");
  suite->add_option("--plot", su_plot, "also write plot data (J, ratio) here");

  auto* refine = app.add_subcommand("refine", "refinement study");
  std::string rf_harness = "thm14";
  int rf_L = 1;
  std::vector<int> rf_js{3, 4, 5};
  refine->add_option("--harness", rf_harness);
  refine->add_option("--L", rf_L);
  refine->add_option("--J", rf_js, "increasing J list")->expected(-1);

  CLI11_PARSE(app, argc, argv);

  if (const char* env = std::getenv("ENTROWEIGHT_THREADS"); env && threads == 0)
    threads = std::atoi(env);
  if (threads > 0) omp_set_num_threads(threads);

  try {
    if (grid->parsed()) {
      ew::Window w{g_n, g_L};
      std::string out;
      if (!g_cover.empty()) {
        ew::RationalBox box;
        for (size_t a = 0; a + 1 < g_cover.size(); a += 2) {
          // command-line doubles are expected to be dyadic rationals
          box.lo.push_back(ew::Rational(std::llround(g_cover[a] * (1 << 20)), 1 << 20));
          box.hi.push_back(ew::Rational(std::llround(g_cover[a + 1] * (1 << 20)), 1 << 20));
        }
        out = ew::cover_cube(box, w).str() + "\n";
      } else {
        for (const auto& c : ew::enumerate_cubes(
                 w, ew::GridShift{g_n, g_mask}, g_smin, g_smax,
                 g_overlap ? ew::CubePolicy::OverlapWindow : ew::CubePolicy::InsideWindow))
          out += c.str() + "\n";
      }
      emit(out_path, out);
      return 0;
    }

    CliConfig cc = config_path.empty() ? CliConfig{} : load_config(config_path);
    ew::Mesh mesh(1, cc.L, cc.J);
    ew::Materialized m = ew::materialize(cc.cfg, mesh);
    ew::StepFunction g1 = ew::pointwise_product(m.f1, m.s1);
    ew::StepFunction g2 = ew::pointwise_product(m.f2, m.s2);

    if (op->parsed()) {
      ew::OperatorField field;
      ew::GridShift t{mesh.n, op_mask};
      if (op_name == "oracle") field = ew::frac_maximal_oracle(g1, g2, cc.cfg.exps);
      else if (op_name == "dyadic") field = ew::frac_maximal_dyadic(g1, g2, cc.cfg.exps, t);
      else if (op_name == "integral") field = ew::frac_integral_dyadic(g1, g2, cc.cfg.exps, t);
      else if (op_name == "quadrature") field = ew::frac_integral_quadrature(g1, g2, cc.cfg.exps);
      else throw std::domain_error("unknown op: " + op_name);
      const std::string path = out_path.empty() ? "field.csv" : out_path;
      ew::write_field_csv(field, path);
      std::cout << field.tag << " -> " << path << "\n";
      return 0;
    }

    if (sparse->parsed()) {
      ew::GridShift t{mesh.n, sp_mask};
      ew::SparseFamily S = ew::build_sparse(g1, g2, cc.cfg.exps, t, sp_a);
      ew::SparsityReport sr = ew::verify_sparse(S);
      ew::DominationReport dr = ew::domination_report(g1, g2, cc.cfg.exps, t, sp_a);
      nlohmann::ordered_json j;
      j["schema_version"] = ew::kSchemaVersion;
      j["cubes"] = S.size();
      j["a"] = S.selection_ratio;
      j["sparse_ok"] = sr.pass;
      j["maximal_ratio_min"] = dr.maximal_ratio_min;
      j["maximal_ratio_max"] = dr.maximal_ratio_max;
      j["certificate_ratio"] = dr.certificate_ratio;
      emit(out_path, j.dump(2) + "\n");
      return sr.pass ? 0 : 1;
    }

    if (constants->parsed()) {
      using K = ew::ConstantKind;
      K kind;
      if (kind_str == "A_pq") kind = K::JointAPQ;
      else if (kind_str == "A_pq_Ainf") kind = K::JointAinfNu;
      else if (kind_str == "A_pq_Hinf") kind = K::JointHinf;
      else if (kind_str == "H_p_inf") kind = K::HinfVector;
      else if (kind_str == "RH_p") kind = K::ReverseHolder;
      else if (kind_str == "Ainf_exp_nu") kind = K::AinfNu;
      else if (kind_str == "ceiling") kind = K::Ceiling;
      else if (kind_str == "floor") kind = K::Floor;
      else if (kind_str == "bracket") kind = K::Bracket;
      else throw std::domain_error("unknown constant kind: " + kind_str);
      std::vector<ew::EpsilonSpec> eps;
      const ew::ExponentTuple& e = cc.cfg.exps;
      if (kind == K::Ceiling) eps = {ew::default_eps(e.q)};
      else if (kind == K::Floor)
        eps = {ew::default_eps(e.p1), ew::default_eps(e.p2), ew::default_eps(e.qd())};
      else if (kind == K::Bracket)
        eps = {ew::default_eps(1.0 / ew::ExponentTuple::dual(e.pi(kt[0])))};
      auto rep = ew::global_constant(kind, m.w, m.s1, m.s2, e, eps,
                                     {kt[0], kt[1], kt[2]});
      emit(out_path, ew::constant_json(rep));
      return 0;
    }

    if (verify->parsed()) {
      ew::VerificationReport rep = ew::run_harness(harness, cc.cfg, mesh);
      emit(out_path, ew::report_json(rep));
      return rep.pass ? 0 : 1;
    }

    if (suite->parsed()) {
      auto reps = ew::run_suite(suite_name, su_L, su_J);
      emit(out_path, ew::reports_json(reps));
      if (!su_csv.empty()) ew::write_text_atomic(su_csv, ew::reports_csv(reps));
      if (!su_plot.empty()) ew::write_text_atomic(su_plot, ew::plot_csv(reps));
      bool ok = true;
      for (const auto& r : reps) ok = ok && r.pass;
      return ok ? 0 : 1;
    }

    if (refine->parsed()) {
      ew::VerificationReport rep = ew::refinement_study(rf_harness, cc.cfg, rf_L, rf_js);
      emit(out_path, ew::report_json(rep));
      return rep.pass ? 0 : 1;
    }
  } catch (const std::domain_error& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
