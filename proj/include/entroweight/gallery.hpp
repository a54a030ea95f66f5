#pragma once

#include "entroweight/exponents.hpp"
#include "entroweight/step.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace ew {

// Recipe for a weight or input density, discretized as exact cell averages
// where a closed form exists.
struct GallerySpec {
  enum class Family {
    Constant,      // value a
    Power,         // cell averages of |x|^a (n = 1), clamped at the floor
    TwoCell,       // 1 for x < 0, a for x >= 0 (n = 1)
    Bump,          // 0.5 + a * (1 - |x|)_+, cell-averaged (n = 1)
    DyadicRandom,  // multiplicative cascade: children scaled by (1 +- delta)
    Indicator,     // 1 on [lo, hi)^n, cell-averaged overlap
    Tent,          // (1 - |x - center|/radius)_+, cell-averaged (n = 1)
    Random,        // i.i.d. uniform [floor, 1] per cell
  };

  Family family = Family::Constant;
  double a = 1.0;
  double delta = 0.5;    // cascade contrast, in (0, 1)
  double lo = 0.0, hi = 1.0;
  double center = 0.0, radius = 1.0;
  std::uint64_t seed = 0;

  std::string str() const;
};

StepFunction make_weight(const GallerySpec& spec, const Mesh& mesh);   // clamped positive
StepFunction make_density(const GallerySpec& spec, const Mesh& mesh);  // may vanish

struct SuiteConfig {
  std::string id;
  GallerySpec f1, f2;      // input densities
  GallerySpec s1, s2, s3;  // weights (s3 doubles as the target w)
  ExponentTuple exps;
};

// Deterministic weight/exponent gallery: "smoke" (5 configs) or "full"
// (>= 30 configs spanning alpha, p_i, q and all weight families).
std::vector<SuiteConfig> gallery_suite(const std::string& name);

}  // namespace ew
