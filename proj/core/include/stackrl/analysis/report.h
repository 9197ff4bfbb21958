#ifndef STACKRL_ANALYSIS_REPORT_H_
#define STACKRL_ANALYSIS_REPORT_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "stackrl/chem/fingerprint.h"

namespace stackrl::analysis {

inline constexpr double kDefaultSimilarityThreshold = 0.85;
inline constexpr std::size_t kDefaultHistogramBins = 40;
inline constexpr std::size_t kDefaultPairLimit = 10000;

// Property of a valid SMILES string; nullopt when undefined.
using PropertyOracle = std::function<std::optional<double>(const std::string&)>;

struct Histogram {
  double lo = 0.0;
  double hi = 0.0;
  std::vector<std::size_t> counts;

  std::size_t bins() const { return counts.size(); }
  double bin_width() const { return counts.empty() ? 0.0 : (hi - lo) / static_cast<double>(counts.size()); }
  double center(std::size_t i) const { return lo + (static_cast<double>(i) + 0.5) * bin_width(); }
  bool same_bins(const Histogram& o) const { return lo == o.lo && hi == o.hi && bins() == o.bins(); }
};

// Equal-width bins over [lo, hi]; values at hi land in the last bin. A
// degenerate range is widened by 0.5 on each side.
Histogram make_histogram(const std::vector<double>& values, double lo, double hi, std::size_t bins);

struct SampleRow {
  std::string smiles;
  bool valid = false;
  bool duplicate = false;        // an earlier sample decoded to the same string
  bool in_train = false;
  std::optional<double> property;
  std::optional<double> max_similarity;  // to the training set
};

struct LibraryReport {
  std::size_t n_samples = 0;
  std::size_t n_valid = 0;
  double valid_fraction = 0.0;
  double duplicate_fraction = 0.0;
  std::optional<double> internal_diversity;
  std::optional<double> frac_similar_to_train;
  std::optional<double> frac_in_train;
  std::optional<double> scaffold_overlap_fraction;
  std::optional<double> mean_property;
  std::optional<double> median_property;
  std::optional<double> mean_molar_mass;
  double similarity_threshold = kDefaultSimilarityThreshold;
  Histogram histogram;
  std::vector<double> property_values;  // scored valid samples, in order
  std::vector<SampleRow> rows;
};

// Fingerprints, strings and scaffold keys of a training set, computed once.
struct TrainingReference {
  std::set<std::string, std::less<>> strings;
  std::vector<chem::Fingerprint> fingerprints;
  std::set<std::uint64_t> scaffold_keys;
};
TrainingReference build_reference(const std::vector<std::string>& train_set);

struct ReportOptions {
  double similarity_threshold = kDefaultSimilarityThreshold;
  std::size_t pair_limit = kDefaultPairLimit;
  std::uint64_t pair_seed = 0;
  std::size_t histogram_bins = kDefaultHistogramBins;
  PropertyOracle property;  // may be empty
};

// Library statistics. Invalid samples count towards valid_fraction and
// duplicate_fraction only. frac_in_train and frac_similar_to_train are over
// valid samples. internal_diversity is the mean of 1 - Tanimoto over pairs
// of distinct valid strings (all pairs, or pair_limit random pairs). The
// scaffold overlap is the fraction of distinct non-empty scaffolds that also
// occur in the training set.
LibraryReport build_report(const std::vector<std::string>& samples, const TrainingReference& reference,
                           const ReportOptions& options = {});
LibraryReport build_report(const std::vector<std::string>& samples, const std::vector<std::string>& train_set,
                           const ReportOptions& options = {});

// Re-bins both reports over the pooled min/max of their property values.
void align_histograms(LibraryReport& a, LibraryReport& b, std::size_t bins = kDefaultHistogramBins);

enum class ShiftVerdict { kShiftedUp, kShiftedDown, kNoShift };
std::string_view verdict_name(ShiftVerdict v);

struct DistributionShift {
  double delta_mean = 0.0;
  double delta_median = 0.0;
  ShiftVerdict verdict = ShiftVerdict::kNoShift;
};

// optimized minus baseline. Verdict compares delta_mean to +-margin. Throws
// DataError when the histograms use different bins or a mean is missing.
DistributionShift compare_distributions(const LibraryReport& baseline, const LibraryReport& optimized,
                                        double margin = 0.0);

}  // namespace stackrl::analysis

#endif  // STACKRL_ANALYSIS_REPORT_H_
