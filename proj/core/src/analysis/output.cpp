#include "stackrl/analysis/output.h"

#include <json.hpp>

#include "stackrl/io/text.h"

namespace stackrl::analysis {
namespace {

nlohmann::ordered_json opt(const std::optional<double>& v) {
  return v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json(nullptr);
}

std::string cell(const std::optional<double>& v) { return v ? io::format_double(*v) : std::string(); }

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string report_json(const LibraryReport& r) {
  nlohmann::ordered_json j;
  j["n_samples"] = r.n_samples;
  j["n_valid"] = r.n_valid;
  j["valid_fraction"] = r.valid_fraction;
  j["duplicate_fraction"] = r.duplicate_fraction;
  j["internal_diversity"] = opt(r.internal_diversity);
  j["similarity_threshold"] = r.similarity_threshold;
  j["frac_similar_to_train"] = opt(r.frac_similar_to_train);
  j["frac_in_train"] = opt(r.frac_in_train);
  j["scaffold_overlap_fraction"] = opt(r.scaffold_overlap_fraction);
  j["mean_property"] = opt(r.mean_property);
  j["median_property"] = opt(r.median_property);
  j["mean_molar_mass"] = opt(r.mean_molar_mass);
  nlohmann::ordered_json h;
  h["lo"] = r.histogram.lo;
  h["hi"] = r.histogram.hi;
  h["counts"] = r.histogram.counts;
  j["histogram"] = h;
  return j.dump(2) + "\n";
}

std::string shift_json(const DistributionShift& s) {
  nlohmann::ordered_json j;
  j["delta_mean"] = s.delta_mean;
  j["delta_median"] = s.delta_median;
  j["verdict"] = std::string(verdict_name(s.verdict));
  return j.dump(2) + "\n";
}

std::string samples_csv(const LibraryReport& r, const std::string& header) {
  std::string out = header + "index,smiles,valid,duplicate,in_train,property,max_similarity\n";
  for (std::size_t i = 0; i < r.rows.size(); ++i) {
    const auto& row = r.rows[i];
    out += std::to_string(i) + "," + csv_field(row.smiles) + "," + (row.valid ? "1" : "0") + "," +
           (row.duplicate ? "1" : "0") + "," + (row.in_train ? "1" : "0") + "," + cell(row.property) + "," +
           cell(row.max_similarity) + "\n";
  }
  return out;
}

std::string histogram_text(const Histogram& h, const std::string& header) {
  std::string out = header;
  for (std::size_t i = 0; i < h.bins(); ++i) {
    out += io::format_double(h.center(i)) + " " + std::to_string(h.counts[i]) + "\n";
  }
  return out;
}

}  // namespace stackrl::analysis
