#include "stackrl/analysis/report.h"

#include <algorithm>
#include <cmath>
#include <map>

#include "stackrl/chem/properties.h"
#include "stackrl/chem/scaffold.h"
#include "stackrl/chem/validator.h"
#include "stackrl/errors.h"
#include "stackrl/random.h"

namespace stackrl::analysis {

Histogram make_histogram(const std::vector<double>& values, double lo, double hi, std::size_t bins) {
  if (bins == 0) throw std::invalid_argument("histogram needs at least one bin");
  if (!(hi > lo)) {
    lo -= 0.5;
    hi += 0.5;
  }
  Histogram h{lo, hi, std::vector<std::size_t>(bins, 0)};
  const double width = (hi - lo) / static_cast<double>(bins);
  for (double v : values) {
    if (v < lo || v > hi) continue;
    auto i = static_cast<std::size_t>((v - lo) / width);
    h.counts[std::min(i, bins - 1)]++;
  }
  return h;
}

TrainingReference build_reference(const std::vector<std::string>& train_set) {
  TrainingReference ref;
  for (const auto& s : train_set) {
    if (!ref.strings.insert(s).second) continue;
    const auto parsed = chem::parse_molecule(s);
    if (!parsed.report.valid) continue;
    ref.fingerprints.push_back(chem::fingerprint(parsed.graph));
    const auto scaffold = chem::murcko_scaffold(parsed.graph);
    if (!scaffold.empty()) ref.scaffold_keys.insert(chem::graph_key(scaffold));
  }
  return ref;
}

namespace {

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace

LibraryReport build_report(const std::vector<std::string>& samples, const TrainingReference& ref,
                           const ReportOptions& options) {
  LibraryReport r;
  r.n_samples = samples.size();
  r.similarity_threshold = options.similarity_threshold;
  std::set<std::string, std::less<>> seen;
  std::map<std::string, chem::Fingerprint, std::less<>> distinct_valid;
  std::set<std::uint64_t> scaffolds;
  std::size_t duplicates = 0, in_train = 0, similar = 0;
  double mass_sum = 0.0;
  std::size_t mass_n = 0;

  for (const auto& s : samples) {
    SampleRow row;
    row.smiles = s;
    row.duplicate = !seen.insert(s).second;
    if (row.duplicate) ++duplicates;
    const auto parsed = chem::parse_molecule(s);
    row.valid = parsed.report.valid;
    if (row.valid) {
      ++r.n_valid;
      const auto fp = chem::fingerprint(parsed.graph);
      row.in_train = ref.strings.count(s) > 0;
      if (row.in_train) ++in_train;
      if (!ref.fingerprints.empty()) {
        double best = 0.0;
        for (const auto& t : ref.fingerprints) best = std::max(best, chem::tanimoto(fp, t));
        row.max_similarity = best;
        if (best > options.similarity_threshold) ++similar;
      }
      if (options.property) {
        row.property = options.property(s);
        if (row.property) r.property_values.push_back(*row.property);
      }
      if (auto m = chem::molar_mass(parsed.graph)) {
        mass_sum += *m;
        ++mass_n;
      }
      const auto scaffold = chem::murcko_scaffold(parsed.graph);
      if (!scaffold.empty()) scaffolds.insert(chem::graph_key(scaffold));
      distinct_valid.emplace(s, fp);
    }
    r.rows.push_back(std::move(row));
  }

  if (r.n_samples > 0) {
    const double n = static_cast<double>(r.n_samples);
    r.valid_fraction = static_cast<double>(r.n_valid) / n;
    r.duplicate_fraction = static_cast<double>(duplicates) / n;
  }
  if (r.n_valid > 0) {
    const double nv = static_cast<double>(r.n_valid);
    r.frac_in_train = static_cast<double>(in_train) / nv;
    if (!ref.fingerprints.empty()) r.frac_similar_to_train = static_cast<double>(similar) / nv;
  }
  if (mass_n > 0) r.mean_molar_mass = mass_sum / static_cast<double>(mass_n);
  if (!scaffolds.empty()) {
    std::size_t shared = 0;
    for (auto k : scaffolds) shared += ref.scaffold_keys.count(k);
    r.scaffold_overlap_fraction = static_cast<double>(shared) / static_cast<double>(scaffolds.size());
  }

  // Diversity over distinct valid strings, in sorted order.
  std::vector<const chem::Fingerprint*> fps;
  for (const auto& [s, fp] : distinct_valid) fps.push_back(&fp);
  const std::size_t m = fps.size();
  if (m >= 2) {
    const std::size_t all_pairs = m * (m - 1) / 2;
    double total = 0.0;
    std::size_t count = 0;
    if (all_pairs <= options.pair_limit) {
      for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = i + 1; j < m; ++j) {
          total += 1.0 - chem::tanimoto(*fps[i], *fps[j]);
          ++count;
        }
      }
    } else {
      Rng rng(options.pair_seed);
      for (; count < options.pair_limit; ++count) {
        const std::size_t i = uniform_index(rng, m);
        std::size_t j = uniform_index(rng, m - 1);
        if (j >= i) ++j;
        total += 1.0 - chem::tanimoto(*fps[i], *fps[j]);
      }
    }
    r.internal_diversity = total / static_cast<double>(count);
  }

  if (!r.property_values.empty()) {
    double sum = 0.0;
    for (double v : r.property_values) sum += v;
    r.mean_property = sum / static_cast<double>(r.property_values.size());
    r.median_property = median(r.property_values);
    const auto [lo, hi] = std::minmax_element(r.property_values.begin(), r.property_values.end());
    r.histogram = make_histogram(r.property_values, *lo, *hi, options.histogram_bins);
  }
  return r;
}

LibraryReport build_report(const std::vector<std::string>& samples, const std::vector<std::string>& train_set,
                           const ReportOptions& options) {
  return build_report(samples, build_reference(train_set), options);
}

void align_histograms(LibraryReport& a, LibraryReport& b, std::size_t bins) {
  std::vector<double> pooled = a.property_values;
  pooled.insert(pooled.end(), b.property_values.begin(), b.property_values.end());
  if (pooled.empty()) return;
  const auto [lo, hi] = std::minmax_element(pooled.begin(), pooled.end());
  a.histogram = make_histogram(a.property_values, *lo, *hi, bins);
  b.histogram = make_histogram(b.property_values, *lo, *hi, bins);
}

std::string_view verdict_name(ShiftVerdict v) {
  switch (v) {
    case ShiftVerdict::kShiftedUp: return "shifted-up";
    case ShiftVerdict::kShiftedDown: return "shifted-down";
    case ShiftVerdict::kNoShift: return "no-shift";
  }
  return "unknown";
}

DistributionShift compare_distributions(const LibraryReport& baseline, const LibraryReport& optimized, double margin) {
  if (!baseline.histogram.same_bins(optimized.histogram)) {
    throw DataError("compare_distributions: histograms use different bins");
  }
  if (!baseline.mean_property || !optimized.mean_property) {
    throw DataError("compare_distributions: a report has no property values");
  }
  DistributionShift d;
  d.delta_mean = *optimized.mean_property - *baseline.mean_property;
  d.delta_median = *optimized.median_property - *baseline.median_property;
  if (d.delta_mean > margin) d.verdict = ShiftVerdict::kShiftedUp;
  else if (d.delta_mean < -margin) d.verdict = ShiftVerdict::kShiftedDown;
  return d;
}

}  // namespace stackrl::analysis
