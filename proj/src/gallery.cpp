#include "entroweight/gallery.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace ew {

namespace {

// Antiderivative of |x|^a: sign(x) |x|^{a+1} / (a+1); a > -1 keeps it finite.
double abs_power_primitive(double x, double a) {
  const double s = x < 0 ? -1.0 : 1.0;
  return s * std::pow(std::abs(x), a + 1.0) / (a + 1.0);
}

// Cell average of (1 - |x - c|/r)_+ over [l, u].
double tent_average(double l, double u, double c, double r) {
  auto primitive = [&](double x) {
    // integral of the tent from c - r up to x
    double t = std::clamp(x, c - r, c + r);
    if (t <= c) {
      double d = (t - (c - r)) / r;
      return 0.5 * r * d * d;
    }
    double d = ((c + r) - t) / r;
    return r - 0.5 * r * d * d;
  };
  return (primitive(u) - primitive(l)) / (u - l);
}

double overlap_len(double l, double u, double lo, double hi) {
  return std::max(0.0, std::min(u, hi) - std::max(l, lo));
}

StepFunction materialize(const GallerySpec& spec, const Mesh& mesh) {
  StepFunction f(mesh);
  const std::int64_t B = mesh.base_per_axis();
  const double hb = mesh.base_side_d();
  const double left = -std::pow(2.0, double(mesh.L));

  auto cell_lo = [&](std::int64_t i) { return left + double(i) * hb; };

  switch (spec.family) {
    case GallerySpec::Family::Constant:
      std::fill(f.values.begin(), f.values.end(), spec.a);
      break;
    case GallerySpec::Family::Power: {
      if (mesh.n != 1) throw std::invalid_argument("gallery: power family is n = 1");
      if (spec.a <= -1.0) throw std::invalid_argument("gallery: power exponent must be > -1");
      for (std::int64_t i = 0; i < B; ++i) {
        const double l = cell_lo(i), u = l + hb;
        f.values[size_t(i)] =
            (abs_power_primitive(u, spec.a) - abs_power_primitive(l, spec.a)) / hb;
      }
      break;
    }
    case GallerySpec::Family::TwoCell: {
      if (mesh.n != 1) throw std::invalid_argument("gallery: two-cell family is n = 1");
      for (std::int64_t i = 0; i < B; ++i)
        f.values[size_t(i)] = cell_lo(i) < 0.0 ? 1.0 : spec.a;
      break;
    }
    case GallerySpec::Family::Bump: {
      if (mesh.n != 1) throw std::invalid_argument("gallery: bump family is n = 1");
      for (std::int64_t i = 0; i < B; ++i) {
        const double l = cell_lo(i), u = l + hb;
        f.values[size_t(i)] = 0.5 + spec.a * tent_average(l, u, 0.0, 1.0);
      }
      break;
    }
    case GallerySpec::Family::DyadicRandom: {
      if (spec.delta < 0.0 || spec.delta >= 1.0)
        throw std::invalid_argument("gallery: cascade delta must lie in [0, 1)");
      if (mesh.n != 1) throw std::invalid_argument("gallery: cascade family is n = 1");
      // Binary cascade over the window: one coin per internal node, in
      // breadth-first order, so values are independent of J refinement depth
      // down to the common levels.
      std::mt19937_64 rng(spec.seed);
      std::vector<double> level{1.0};
      const int depth = mesh.L + mesh.J + 1;
      for (int d = 0; d < depth; ++d) {
        std::vector<double> next(level.size() * 2);
        for (size_t b = 0; b < level.size(); ++b) {
          const bool coin = (rng() >> 32) & 1u;
          const double up = 1.0 + spec.delta, dn = 1.0 - spec.delta;
          next[2 * b] = level[b] * (coin ? up : dn);
          next[2 * b + 1] = level[b] * (coin ? dn : up);
        }
        level.swap(next);
      }
      std::copy(level.begin(), level.end(), f.values.begin());
      break;
    }
    case GallerySpec::Family::Indicator: {
      for (std::int64_t flat = 0; flat < mesh.base_cells(); ++flat) {
        double frac = 1.0;
        const std::int64_t ix = flat % B, iy = flat / B;
        frac *= overlap_len(cell_lo(ix), cell_lo(ix) + hb, spec.lo, spec.hi) / hb;
        if (mesh.n == 2)
          frac *= overlap_len(cell_lo(iy), cell_lo(iy) + hb, spec.lo, spec.hi) / hb;
        f.values[size_t(flat)] = frac;
      }
      break;
    }
    case GallerySpec::Family::Tent: {
      if (mesh.n != 1) throw std::invalid_argument("gallery: tent family is n = 1");
      for (std::int64_t i = 0; i < B; ++i) {
        const double l = cell_lo(i), u = l + hb;
        f.values[size_t(i)] = tent_average(l, u, spec.center, spec.radius);
      }
      break;
    }
    case GallerySpec::Family::Random: {
      std::mt19937_64 rng(spec.seed);
      std::uniform_real_distribution<double> uni(spec.a > 0 ? spec.a : 0.0, 1.0);
      for (auto& v : f.values) v = uni(rng);
      break;
    }
  }
  return f;
}

}  // namespace

std::string GallerySpec::str() const {
  switch (family) {
    case Family::Constant: return "const(" + std::to_string(a) + ")";
    case Family::Power: return "pow(" + std::to_string(a) + ")";
    case Family::TwoCell: return "twocell(" + std::to_string(a) + ")";
    case Family::Bump: return "bump(" + std::to_string(a) + ")";
    case Family::DyadicRandom:
      return "cascade(d=" + std::to_string(delta) + ",seed=" + std::to_string(seed) + ")";
    case Family::Indicator:
      return "ind[" + std::to_string(lo) + "," + std::to_string(hi) + ")";
    case Family::Tent:
      return "tent(c=" + std::to_string(center) + ",r=" + std::to_string(radius) + ")";
    case Family::Random: return "rand(seed=" + std::to_string(seed) + ")";
  }
  return "?";
}

StepFunction make_weight(const GallerySpec& spec, const Mesh& mesh) {
  return clamp_weight(materialize(spec, mesh));
}

StepFunction make_density(const GallerySpec& spec, const Mesh& mesh) {
  return materialize(spec, mesh);
}

namespace {

GallerySpec constant(double a) {
  GallerySpec g;
  g.family = GallerySpec::Family::Constant;
  g.a = a;
  return g;
}
GallerySpec power(double a) {
  GallerySpec g;
  g.family = GallerySpec::Family::Power;
  g.a = a;
  return g;
}
GallerySpec twocell(double a) {
  GallerySpec g;
  g.family = GallerySpec::Family::TwoCell;
  g.a = a;
  return g;
}
GallerySpec bump(double a) {
  GallerySpec g;
  g.family = GallerySpec::Family::Bump;
  g.a = a;
  return g;
}
GallerySpec cascade(double delta, std::uint64_t seed) {
  GallerySpec g;
  g.family = GallerySpec::Family::DyadicRandom;
  g.delta = delta;
  g.seed = seed;
  return g;
}
GallerySpec indicator(double lo, double hi) {
  GallerySpec g;
  g.family = GallerySpec::Family::Indicator;
  g.lo = lo;
  g.hi = hi;
  return g;
}
GallerySpec tent(double c, double r) {
  GallerySpec g;
  g.family = GallerySpec::Family::Tent;
  g.center = c;
  g.radius = r;
  return g;
}
GallerySpec rnd(std::uint64_t seed, double floor = 0.0) {
  GallerySpec g;
  g.family = GallerySpec::Family::Random;
  g.seed = seed;
  g.a = floor;
  return g;
}

ExponentTuple tuple(double alpha, double p1, double p2, double q, double p3 = 0.0) {
  ExponentTuple e;
  e.alpha = alpha;
  e.p1 = p1;
  e.p2 = p2;
  e.q = q;
  e.p3 = p3;
  return e;
}

}  // namespace

std::vector<SuiteConfig> gallery_suite(const std::string& name) {
  std::vector<SuiteConfig> out;
  auto add = [&](std::string id, GallerySpec f1, GallerySpec f2, GallerySpec s1, GallerySpec s2,
                 GallerySpec s3, ExponentTuple exps) {
    out.push_back(SuiteConfig{std::move(id), f1, f2, s1, s2, s3, exps});
  };

  if (name == "smoke") {
    add("smoke-flat", constant(1), constant(1), constant(1), constant(1), constant(1),
        tuple(0.0, 2, 2, 1.0, 2));
    add("smoke-twocell", indicator(-1, 1), tent(0, 1), twocell(4), twocell(0.25), constant(1),
        tuple(0.5, 2, 2, 1.5, 2));
    add("smoke-power", tent(0.5, 0.5), indicator(0, 0.5), power(0.5), constant(2), power(0.25),
        tuple(1.0, 1.5, 3, 1.25, 2));
    add("smoke-cascade", rnd(11), indicator(-0.5, 0.5), cascade(0.5, 7), cascade(0.5, 13),
        twocell(2), tuple(0.5, 2, 2, 1.5, 2));
    add("smoke-bump", indicator(0, 2), tent(-1, 1), bump(2), power(0.75), bump(0.5),
        tuple(1.0, 1.5, 2, 1.4, 1.5));
    return out;
  }
  if (name != "full") throw std::invalid_argument("gallery_suite: unknown suite " + name);

  // Full grid: alpha x (p1, p2, q) x weight trios, deterministic seeds.
  const double alphas[3] = {0.0, 0.5, 1.0};
  struct PQ {
    double p1, p2, dq;  // q = p + dq
  };
  const PQ pqs[4] = {{2, 2, 0}, {2, 2, 0.5}, {1.5, 3, 0.5}, {3, 1.5, 0}};
  struct Trio {
    GallerySpec s1, s2, s3;
    const char* tag;
  };
  const Trio trios[3] = {
      {constant(1), twocell(3), power(0.5), "mix"},
      {cascade(0.5, 101), cascade(0.25, 202), bump(1.5), "cascade"},
      {power(0.25), bump(3), cascade(0.75, 303), "rough"},
  };
  const GallerySpec dens[3][2] = {
      {indicator(0, 1), tent(0, 1)},
      {rnd(401), indicator(-1, 0.5)},
      {tent(-0.5, 1), rnd(502)},
  };
  int counter = 0;
  for (double alpha : alphas)
    for (const PQ& pq : pqs)
      for (int t = 0; t < 3; ++t) {
        ExponentTuple e = tuple(alpha, pq.p1, pq.p2, 0.0, 2.0);
        e.q = e.p() + pq.dq;
        std::string id = "full-" + std::to_string(counter++) + "-" + trios[t].tag;
        add(id, dens[t][0], dens[t][1], trios[t].s1, trios[t].s2, trios[t].s3, e);
      }
  return out;
}

}  // namespace ew
