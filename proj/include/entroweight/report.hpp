#pragma once

#include "entroweight/entropy.hpp"
#include "entroweight/verify.hpp"

#include <string>
#include <vector>

namespace ew {

inline constexpr int kSchemaVersion = 1;

// Schema-versioned, key-ordered JSON; byte-identical for identical inputs.
std::string report_json(const VerificationReport& rep);
std::string reports_json(const std::vector<VerificationReport>& reps);
std::string constant_json(const ConstantReport& rep);

// Flat CSV: harness,config_id,J,lhs,rhs,ratio,pass
std::string reports_csv(const std::vector<VerificationReport>& reps);
// Plot data: harness,config_id,J,ratio (refinement series flattened)
std::string plot_csv(const std::vector<VerificationReport>& reps);

// Write via a temp file + rename so readers never observe partial output.
void write_text_atomic(const std::string& path, const std::string& content);

}  // namespace ew
