#include "entroweight/report.hpp"

#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <stdexcept>

namespace ew {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

ordered_json to_ordered(const VerificationReport& rep) {
  ordered_json j;
  j["schema_version"] = kSchemaVersion;
  j["harness"] = rep.harness;
  j["config_id"] = rep.config_id;
  j["digest"] = rep.digest;
  j["J"] = rep.J;
  j["lhs"] = rep.lhs;
  j["rhs"] = rep.rhs;
  j["ratio"] = rep.ratio;
  j["pass"] = rep.pass;
  j["note"] = rep.note;
  ordered_json bd = ordered_json::object();
  for (const auto& [k, v] : rep.breakdown) bd[k] = v;
  j["breakdown"] = bd;
  ordered_json series = ordered_json::array();
  for (const auto& [jj, r] : rep.refinement) series.push_back({{"J", jj}, {"ratio", r}});
  j["refinement"] = series;
  return j;
}

}  // namespace

std::string report_json(const VerificationReport& rep) { return to_ordered(rep).dump(2) + "\n"; }

std::string reports_json(const std::vector<VerificationReport>& reps) {
  ordered_json j;
  j["schema_version"] = kSchemaVersion;
  ordered_json arr = ordered_json::array();
  for (const auto& r : reps) arr.push_back(to_ordered(r));
  j["reports"] = arr;
  return j.dump(2) + "\n";
}

std::string constant_json(const ConstantReport& rep) {
  ordered_json j;
  j["schema_version"] = kSchemaVersion;
  j["kind"] = kind_name(rep.kind);
  j["alpha"] = rep.exps.alpha;
  j["p1"] = rep.exps.p1;
  j["p2"] = rep.exps.p2;
  j["q"] = rep.exps.q;
  if (rep.exps.p3 > 0) j["p3"] = rep.exps.p3;
  j["sup"] = rep.sup;
  j["argmax"] = rep.argmax >= 0 ? rep.cubes[size_t(rep.argmax)].str() : "";
  ordered_json cubes = ordered_json::array();
  for (size_t i = 0; i < rep.cubes.size(); ++i)
    cubes.push_back({{"cube", rep.cubes[i].str()}, {"value", rep.per_cube[i]}});
  j["per_cube"] = cubes;
  return j.dump(2) + "\n";
}

std::string reports_csv(const std::vector<VerificationReport>& reps) {
  std::string out = "harness,config_id,J,lhs,rhs,ratio,pass\n";
  for (const auto& r : reps)
    out += r.harness + "," + r.config_id + "," + std::to_string(r.J) + "," + fmt17(r.lhs) + "," +
           fmt17(r.rhs) + "," + fmt17(r.ratio) + "," + (r.pass ? "1" : "0") + "\n";
  return out;
}

std::string plot_csv(const std::vector<VerificationReport>& reps) {
  std::string out = "harness,config_id,J,ratio\n";
  for (const auto& r : reps) {
    if (r.refinement.empty()) {
      out += r.harness + "," + r.config_id + "," + std::to_string(r.J) + "," + fmt17(r.ratio) +
             "\n";
      continue;
    }
    for (const auto& [j, ratio] : r.refinement)
      out += r.harness + "," + r.config_id + "," + std::to_string(j) + "," + fmt17(ratio) + "\n";
  }
  return out;
}

void write_text_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  FILE* f = std::fopen(tmp.c_str(), "w");
  if (!f) throw std::runtime_error("write_text_atomic: cannot open " + tmp);
  if (std::fwrite(content.data(), 1, content.size(), f) != content.size()) {
    std::fclose(f);
    throw std::runtime_error("write_text_atomic: short write to " + tmp);
  }
  std::fclose(f);
  std::filesystem::rename(tmp, path);
}

}  // namespace ew
