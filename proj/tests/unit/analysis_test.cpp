#include <algorithm>
#include <set>

#include <gtest/gtest.h>
#include <json.hpp>

#include "stackrl/analysis/output.h"
#include "stackrl/analysis/report.h"
#include "stackrl/chem/fingerprint.h"
#include "stackrl/chem/properties.h"
#include "stackrl/chem/validator.h"
#include "stackrl/corpus/mini_smiles.h"
#include "stackrl/errors.h"

namespace an = stackrl::analysis;
namespace chem = stackrl::chem;

namespace {

const std::vector<std::string> kTen = {"CCO",       "c1ccccc1",   "c1ccccc1O", "CC(=O)O",  "C1CCCCC1",
                                       "c1ccncc1", "CCN(CC)CC", "ClCCl",     "c1ccc2ccccc2c1", "OCC(O)CO"};

an::PropertyOracle mass() {
  return [](const std::string& s) { return chem::compute_feature(chem::Feature::kMolarMass, s); };
}

std::vector<std::string> corpus(std::size_t n, std::uint64_t seed) {
  stackrl::Rng rng(seed);
  return stackrl::corpus::mini_smiles_corpus(n, {}, rng);
}

}  // namespace

TEST(Report, SamplesEqualTrainingSet) {
  const auto r = an::build_report(kTen, kTen);
  EXPECT_EQ(r.n_samples, 10u);
  EXPECT_EQ(r.valid_fraction, 1.0);
  EXPECT_EQ(r.frac_in_train, 1.0);
  EXPECT_EQ(r.frac_similar_to_train, 1.0);
  EXPECT_EQ(r.scaffold_overlap_fraction, 1.0);
  EXPECT_EQ(r.duplicate_fraction, 0.0);
}

TEST(Report, AllInvalidLeavesMetricsAbsent) {
  const auto r = an::build_report({"C1CC", "((", "C(C"}, kTen, {.property = mass()});
  EXPECT_EQ(r.valid_fraction, 0.0);
  EXPECT_EQ(r.n_valid, 0u);
  EXPECT_FALSE(r.internal_diversity.has_value());
  EXPECT_FALSE(r.frac_in_train.has_value());
  EXPECT_FALSE(r.frac_similar_to_train.has_value());
  EXPECT_FALSE(r.mean_property.has_value());
  EXPECT_TRUE(r.property_values.empty());
  const auto j = nlohmann::json::parse(an::report_json(r));
  EXPECT_TRUE(j["internal_diversity"].is_null());
  EXPECT_EQ(j["valid_fraction"], 0.0);
}

TEST(Report, DiversityMatchesPairwiseMean) {
  std::vector<chem::Fingerprint> fps;
  for (const auto& s : kTen) fps.push_back(chem::fingerprint(chem::parse_graph(s)));
  double sum = 0.0;
  std::size_t pairs = 0;
  for (std::size_t i = 0; i < fps.size(); ++i)
    for (std::size_t j = i + 1; j < fps.size(); ++j, ++pairs) sum += 1.0 - chem::tanimoto(fps[i], fps[j]);
  ASSERT_EQ(pairs, 45u);
  const auto r = an::build_report(kTen, std::vector<std::string>{"CCCC"});
  ASSERT_TRUE(r.internal_diversity.has_value());
  EXPECT_NEAR(*r.internal_diversity, sum / 45.0, 1e-12);
}

TEST(Report, DeterministicWithSampledPairs) {
  const auto samples = corpus(300, 1);
  const auto train = corpus(200, 2);
  an::ReportOptions o;
  o.pair_limit = 500;
  o.pair_seed = 7;
  o.property = mass();
  const auto a = an::build_report(samples, train, o);
  const auto b = an::build_report(samples, train, o);
  EXPECT_EQ(an::report_json(a), an::report_json(b));
  EXPECT_EQ(an::samples_csv(a, ""), an::samples_csv(b, ""));
}

TEST(Report, DuplicatesDoNotLowerDiversity) {
  stackrl::Rng rng(3);
  const auto pool = corpus(40, 4);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<std::string> with_dups;
    for (int i = 0; i < 30; ++i) with_dups.push_back(pool[stackrl::uniform_index(rng, pool.size())]);
    std::vector<std::string> distinct;
    std::set<std::string> seen;
    for (const auto& s : with_dups)
      if (seen.insert(s).second) distinct.push_back(s);
    const auto a = an::build_report(with_dups, pool);
    const auto b = an::build_report(distinct, pool);
    ASSERT_TRUE(a.internal_diversity && b.internal_diversity);
    EXPECT_GE(*b.internal_diversity, *a.internal_diversity - 1e-15);
    EXPECT_NEAR(a.duplicate_fraction, 1.0 - static_cast<double>(distinct.size()) / 30.0, 1e-12);
  }
}

TEST(Report, FractionsOrderedAndBounded) {
  const auto train = corpus(150, 5);
  auto samples = corpus(100, 6);
  samples.insert(samples.end(), train.begin(), train.begin() + 30);
  samples.push_back("C1CC(");
  const auto r = an::build_report(samples, train, {.property = mass()});
  for (auto v : {r.valid_fraction, r.duplicate_fraction, *r.frac_in_train, *r.frac_similar_to_train,
                 *r.scaffold_overlap_fraction, *r.internal_diversity}) {
    EXPECT_GE(v, 0.0);
    EXPECT_LE(v, 1.0);
  }
  EXPECT_LE(*r.frac_in_train, *r.frac_similar_to_train);
  EXPECT_GE(*r.frac_in_train, 30.0 / static_cast<double>(r.n_valid));
  std::size_t total = 0;
  for (auto c : r.histogram.counts) total += c;
  EXPECT_EQ(total, r.property_values.size());
  EXPECT_EQ(r.property_values.size(), r.n_valid);
  EXPECT_EQ(r.histogram.bins(), an::kDefaultHistogramBins);
}

TEST(Report, PerSampleRows) {
  const std::vector<std::string> samples = {"CCO", "CCO", "C1CC", "c1ccccc1"};
  const auto r = an::build_report(samples, std::vector<std::string>{"CCO"}, {.property = mass()});
  ASSERT_EQ(r.rows.size(), 4u);
  EXPECT_TRUE(r.rows[0].in_train);
  EXPECT_FALSE(r.rows[0].duplicate);
  EXPECT_TRUE(r.rows[1].duplicate);
  EXPECT_FALSE(r.rows[2].valid);
  EXPECT_FALSE(r.rows[2].property.has_value());
  EXPECT_EQ(r.rows[0].max_similarity, 1.0);
  EXPECT_EQ(r.duplicate_fraction, 0.25);
  EXPECT_EQ(r.valid_fraction, 0.75);
  const auto csv = an::samples_csv(r, "# h\n");
  EXPECT_EQ(csv.rfind("# h\nindex,smiles,valid,duplicate,in_train,property,max_similarity\n0,CCO,1,0,1,", 0), 0u);
  EXPECT_NE(csv.find("\n2,C1CC,0,0,0,,\n"), std::string::npos);
}

TEST(Histogram, BinsAndEdges) {
  const auto h = an::make_histogram({0.0, 0.5, 1.0, 2.0, 4.0}, 0.0, 4.0, 4);
  EXPECT_EQ(h.counts, (std::vector<std::size_t>{2, 1, 1, 1}));
  EXPECT_EQ(h.center(0), 0.5);
  const auto flat = an::make_histogram({3.0, 3.0}, 3.0, 3.0, 2);
  EXPECT_EQ(flat.lo, 2.5);
  EXPECT_EQ(flat.hi, 3.5);
  EXPECT_EQ(flat.counts[0] + flat.counts[1], 2u);
  EXPECT_EQ(an::histogram_text(h, "# x\n"), "# x\n0.5 2\n1.5 1\n2.5 1\n3.5 1\n");
}

TEST(Compare, IdenticalReportsHaveNoShift) {
  auto a = an::build_report(kTen, kTen, {.property = mass()});
  auto b = a;
  an::align_histograms(a, b);
  const auto s = an::compare_distributions(a, b);
  EXPECT_EQ(s.delta_mean, 0.0);
  EXPECT_EQ(s.delta_median, 0.0);
  EXPECT_EQ(s.verdict, an::ShiftVerdict::kNoShift);
}

TEST(Compare, OffsetByOneUnit) {
  an::PropertyOracle plus_one = [](const std::string& s) {
    return chem::compute_feature(chem::Feature::kMolarMass, s).value() + 1.0;
  };
  auto a = an::build_report(kTen, kTen, {.property = mass()});
  auto b = an::build_report(kTen, kTen, {.property = plus_one});
  an::align_histograms(a, b);
  const auto s = an::compare_distributions(a, b, 0.5);
  EXPECT_NEAR(s.delta_mean, 1.0, 1e-9);
  EXPECT_NEAR(s.delta_median, 1.0, 1e-9);
  EXPECT_EQ(s.verdict, an::ShiftVerdict::kShiftedUp);
  EXPECT_EQ(an::compare_distributions(b, a, 0.5).verdict, an::ShiftVerdict::kShiftedDown);
  const auto j = nlohmann::json::parse(an::shift_json(s));
  EXPECT_EQ(j["verdict"], "shifted-up");
}

TEST(Compare, BinMismatchIsAnError) {
  auto a = an::build_report(kTen, kTen, {.property = mass()});
  auto b = an::build_report(std::vector<std::string>{"CCO", "CC"}, kTen, {.property = mass()});
  EXPECT_THROW(an::compare_distributions(a, b), stackrl::DataError);
  auto none = an::build_report(kTen, kTen);
  EXPECT_THROW(an::compare_distributions(a, none), stackrl::DataError);
}
