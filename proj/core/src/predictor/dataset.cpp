#include "stackrl/predictor/dataset.h"

#include <cmath>
#include <map>
#include <sstream>

#include "stackrl/chem/validator.h"
#include "stackrl/errors.h"
#include "stackrl/io/text.h"

namespace stackrl::predictor {

std::vector<std::string> PropertyDataset::smiles() const {
  std::vector<std::string> out;
  out.reserve(records.size());
  for (const auto& r : records) out.push_back(r.smiles);
  return out;
}

std::vector<double> PropertyDataset::targets() const {
  std::vector<double> out;
  out.reserve(records.size());
  for (const auto& r : records) out.push_back(r.value);
  return out;
}

PropertyDataset make_dataset(std::vector<PropertyRecord> records, std::string units) {
  PropertyDataset data;
  data.units = std::move(units);
  std::map<std::string, std::size_t, std::less<>> position;
  std::vector<std::size_t> counts;
  for (auto& rec : records) {
    if (!std::isfinite(rec.value)) throw DataError("dataset: non-finite target for '" + rec.smiles + "'");
    if (auto it = position.find(rec.smiles); it != position.end()) {
      data.records[it->second].value += rec.value;
      ++counts[it->second];
      continue;
    }
    const auto report = chem::validate(rec.smiles);
    if (!report.valid) throw DataError("dataset: invalid SMILES '" + rec.smiles + "': " + report.summary());
    position.emplace(rec.smiles, data.records.size());
    counts.push_back(1);
    data.records.push_back(std::move(rec));
  }
  for (std::size_t i = 0; i < data.records.size(); ++i) {
    if (counts[i] > 1) data.records[i].value /= static_cast<double>(counts[i]);
  }
  return data;
}

PropertyDataset parse_dataset(std::string_view text) {
  std::vector<PropertyRecord> records;
  std::string units;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string_view t = io::trim(line);
    if (t.empty()) continue;
    if (t.front() == '#') {
      constexpr std::string_view kUnits = "# units:";
      if (t.substr(0, kUnits.size()) == kUnits) units = std::string(io::trim(t.substr(kUnits.size())));
      continue;
    }
    const auto tab = t.find('\t');
    if (tab == std::string_view::npos) {
      throw DataError("dataset line " + std::to_string(lineno) + ": expected SMILES<TAB>value");
    }
    records.push_back({std::string(io::trim(t.substr(0, tab))),
                       io::parse_double(t.substr(tab + 1), "dataset line " + std::to_string(lineno))});
  }
  return make_dataset(std::move(records), std::move(units));
}

PropertyDataset read_dataset(const std::filesystem::path& path) { return parse_dataset(io::read_text(path)); }

void write_dataset(const std::filesystem::path& path, const PropertyDataset& data, const std::string& header) {
  std::string text = header;
  if (!data.units.empty()) text += "# units: " + data.units + "\n";
  for (const auto& r : data.records) text += r.smiles + "\t" + io::format_double(r.value) + "\n";
  io::write_text(path, text);
}

PropertyDataset oracle_dataset(const std::vector<std::string>& smiles, chem::Feature feature) {
  std::vector<PropertyRecord> records;
  for (const auto& s : smiles) {
    if (!chem::validate(s).valid) continue;
    if (auto v = chem::compute_feature(feature, s)) records.push_back({s, *v});
  }
  return make_dataset(std::move(records), std::string(chem::feature_name(feature)));
}

}  // namespace stackrl::predictor
