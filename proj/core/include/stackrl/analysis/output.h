#ifndef STACKRL_ANALYSIS_OUTPUT_H_
#define STACKRL_ANALYSIS_OUTPUT_H_

#include <string>

#include "stackrl/analysis/report.h"

namespace stackrl::analysis {

// Pretty JSON object; absent metrics are null.
std::string report_json(const LibraryReport& report);
std::string shift_json(const DistributionShift& shift);

// One row per sample: index,smiles,valid,duplicate,in_train,property,max_similarity
// (empty cells for absent values). `header` lines come first.
std::string samples_csv(const LibraryReport& report, const std::string& header);

// "center count" lines for gnuplot, after `header`.
std::string histogram_text(const Histogram& histogram, const std::string& header);

}  // namespace stackrl::analysis

#endif  // STACKRL_ANALYSIS_OUTPUT_H_
