#ifndef STACKRL_PREDICTOR_DATASET_H_
#define STACKRL_PREDICTOR_DATASET_H_

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "stackrl/chem/properties.h"

namespace stackrl::predictor {

struct PropertyRecord {
  std::string smiles;
  double value = 0.0;
  bool operator==(const PropertyRecord&) const = default;
};

struct PropertyDataset {
  std::vector<PropertyRecord> records;
  std::string units;

  std::size_t size() const { return records.size(); }
  bool empty() const { return records.empty(); }
  std::vector<std::string> smiles() const;
  std::vector<double> targets() const;
};

// Validates every SMILES (DataError naming the record otherwise) and merges
// duplicate strings into one record with the mean target, keeping the
// position of the first occurrence.
PropertyDataset make_dataset(std::vector<PropertyRecord> records, std::string units = "");

// "SMILES<TAB>value" lines; '#' lines and blank lines skipped. A
// "# units: <tag>" comment sets the units.
PropertyDataset parse_dataset(std::string_view text);
PropertyDataset read_dataset(const std::filesystem::path& path);
void write_dataset(const std::filesystem::path& path, const PropertyDataset& data, const std::string& header);

// Labels each valid string with a computable feature; strings on which the
// feature is undefined are skipped.
PropertyDataset oracle_dataset(const std::vector<std::string>& smiles, chem::Feature feature);

}  // namespace stackrl::predictor

#endif  // STACKRL_PREDICTOR_DATASET_H_
