#include <cmath>
#include <filesystem>
#include <algorithm>
#include <numeric>
#include <set>

#include <gtest/gtest.h>

#include "stackrl/autodiff/gradcheck.h"
#include "stackrl/chem/properties.h"
#include "stackrl/corpus/mini_smiles.h"
#include "stackrl/errors.h"
#include "stackrl/io/text.h"
#include "stackrl/predictor/dataset.h"
#include "stackrl/predictor/model.h"
#include "stackrl/predictor/training.h"
#include "support/oracles.h"

namespace pred = stackrl::predictor;
namespace ad = stackrl::autodiff;
using stackrl::Rng;

namespace {

pred::PredictorConfig small_config(const stackrl::chem::Vocabulary& vocab, std::size_t e = 4, std::size_t h = 5,
                                   std::size_t d = 6) {
  pred::PredictorConfig c;
  c.embedding_dim = e;
  c.hidden_size = h;
  c.dense_size = d;
  c.vocab_size = vocab.size();
  return c;
}

pred::PredictorModel random_model(std::uint64_t seed, double scale = 1.0) {
  auto vocab = pred::predictor_vocabulary({"CCO", "c1ccccc1N", "ClC(Br)F"});
  Rng rng(seed);
  pred::PredictorModel m(small_config(vocab), vocab, rng);
  for (auto& [name, t] : m.parameters().entries()) {
    for (std::size_t i = 0; i < t.size(); ++i) t[i] = scale * stackrl::uniform(rng, -1.0, 1.0);
  }
  return m;
}

std::vector<std::string> corpus_strings(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  return stackrl::corpus::mini_smiles_corpus(n, {}, rng);
}

}  // namespace

TEST(Predict, ZeroWeightsGiveDenseBias) {
  auto vocab = pred::predictor_vocabulary({"CCO"});
  auto m = pred::PredictorModel::zeros(small_config(vocab), vocab);
  m.parameters().at("dense2.b")[0] = 0.375;
  EXPECT_EQ(pred::predict(m, "CCO"), 0.375);
  EXPECT_EQ(pred::predict(m, ""), 0.375);
}

TEST(Predict, DeterministicAndMatchesScalarOracle) {
  auto m = random_model(1);
  for (const char* s : {"CCO", "c1ccccc1N", "ClC(Br)F", "C", "((N"}) {
    const double a = pred::predict(m, s);
    EXPECT_EQ(a, pred::predict(m, s));
    EXPECT_NEAR(a, stackrl::testing::scalar_lstm_predict(m, pred::predictor_input(m, s)), 1e-12) << s;
  }
}

TEST(Predict, HandComputedSingleUnitStep) {
  // One-unit LSTM, embedding 1, dense 1, a single token after START.
  std::vector<std::string> tokens = {"C"};
  stackrl::chem::Vocabulary vocab(tokens);
  pred::PredictorConfig c;
  c.embedding_dim = 1;
  c.hidden_size = 1;
  c.dense_size = 1;
  c.vocab_size = vocab.size();
  auto m = pred::PredictorModel::zeros(c, vocab);
  auto& p = m.parameters();
  p.at("embedding").at(3, 0) = 0.5;  // "C"
  p.at("lstm.W_i")[0] = 1.0;
  p.at("lstm.W_f")[0] = -1.0;
  p.at("lstm.W_g")[0] = 2.0;
  p.at("lstm.W_o")[0] = 0.5;
  p.at("lstm.b_g")[0] = 0.1;
  p.at("dense1.W")[0] = 3.0;
  p.at("dense1.b")[0] = -0.2;
  p.at("dense2.W")[0] = 1.5;
  p.at("dense2.b")[0] = 0.25;
  // START has a zero embedding, so step 1 only sees biases: i=f=o=0.5, g=tanh(0.1).
  const double c1 = 0.5 * std::tanh(0.1);
  const double h1 = 0.5 * std::tanh(c1);
  auto sig = [](double x) { return 1.0 / (1.0 + std::exp(-x)); };
  const double x = 0.5;
  const double c2 = sig(-x) * c1 + sig(x) * std::tanh(2 * x + 0.1);
  const double h2 = sig(0.5 * x) * std::tanh(c2);
  const double expected = 1.5 * std::max(0.0, 3.0 * h2 - 0.2) + 0.25;
  EXPECT_NEAR(pred::predict(m, "C"), expected, 1e-15);
  (void)h1;
}

TEST(Predict, ScaleAndOffsetApplied) {
  auto m = random_model(2);
  const double raw = pred::predict(m, "CCO");
  m.config().target_scale = 2.0;
  m.config().target_offset = -1.0;
  EXPECT_NEAR(pred::predict(m, "CCO"), 2.0 * raw - 1.0, 1e-15);
}

TEST(Predict, GraphAgreesWithPlainPath) {
  auto m = random_model(3);
  const auto ids = pred::predictor_input(m, "c1ccccc1N");
  ad::Graph g;
  const auto out = pred::build_network(g, m.config(), ids);
  EXPECT_NEAR(ad::forward(g, m.parameters()).scalar(out), pred::predict(m, "c1ccccc1N"), 1e-12);
}

TEST(Predict, AcceptsInvalidMoleculesButNotUnknownCharacters) {
  auto m = random_model(4);
  EXPECT_NO_THROW(pred::predict(m, "C1CC(("));
  EXPECT_NO_THROW(pred::predict(m, "c1cc)N"));
  EXPECT_THROW(pred::predict(m, "CCS"), stackrl::DataError);
}

TEST(Vocabulary, CoversDatasetGeneratorAndCharacters) {
  std::vector<std::string> gen_tokens = {"C", "O", "[NH4+]", "Cl"};
  stackrl::chem::Vocabulary gen(gen_tokens);
  auto v = pred::predictor_vocabulary({"CCBr"}, &gen);
  for (const char* t : {"C", "O", "[NH4+]", "Cl", "Br", "B", "r", "[", "N", "H", "4", "+", "]", "l"}) {
    EXPECT_TRUE(v.find(t).has_value()) << t;
  }
}

class PredictorGradient : public ::testing::TestWithParam<int> {};

TEST_P(PredictorGradient, SquaredErrorMatchesFiniteDifferences) {
  auto m = random_model(10 + GetParam(), 0.8);
  const char* texts[] = {"CCO", "c1ccccc1N", "ClC(Br)F"};
  const auto ids = pred::predictor_input(m, texts[GetParam()]);
  auto report = ad::check_gradient(
      [&](ad::Graph& g) { return pred::build_squared_error(g, m.config(), ids, 0.7); }, m.parameters(), 1e-5);
  EXPECT_LT(report.max_relative_error, 1e-4)
      << report.worst_input << "[" << report.worst_index << "] " << report.worst_analytic << " vs "
      << report.worst_numeric;
}

INSTANTIATE_TEST_SUITE_P(Strings, PredictorGradient, ::testing::Values(0, 1, 2));

TEST(Train, ConstantTargetConverges) {
  std::vector<pred::PropertyRecord> recs;
  for (const auto& s : corpus_strings(60, 5)) recs.push_back({s, 2.5});
  auto data = pred::make_dataset(recs);
  auto vocab = pred::predictor_vocabulary(data.smiles());
  Rng rng(6);
  pred::PredictorModel m(small_config(vocab, 4, 8, 8), vocab, rng);
  pred::PredictorTrainOptions opt;
  opt.epochs = 20;
  opt.learning_rate = 0.01;
  auto history = pred::train(m, data, opt, rng);
  EXPECT_LT(history.back(), 1e-3);
  for (const auto& r : data.records) EXPECT_NEAR(pred::predict(m, r.smiles), 2.5, 0.05);
}

TEST(Train, TokenCountHeldOutR2) {
  const auto strings = corpus_strings(700, 7);
  auto data = pred::oracle_dataset(std::vector<std::string>(strings.begin(), strings.begin() + 500),
                                   stackrl::chem::Feature::kTokenCount);
  auto held = pred::oracle_dataset(std::vector<std::string>(strings.begin() + 500, strings.end()),
                                   stackrl::chem::Feature::kTokenCount);
  auto vocab = pred::predictor_vocabulary(strings);
  Rng rng(8);
  pred::PredictorModel m(small_config(vocab, 8, 16, 16), vocab, rng);
  pred::PredictorTrainOptions opt;
  opt.epochs = 15;
  opt.learning_rate = 0.01;
  pred::train(m, data, opt, rng);
  std::vector<double> t, p;
  for (const auto& r : held.records) {
    t.push_back(r.value);
    p.push_back(pred::predict(m, r.smiles));
  }
  EXPECT_GE(pred::regression_metrics(t, p).r2, 0.8);
}

TEST(Train, ErrorsOnEmptyData) {
  auto m = random_model(9);
  Rng rng(1);
  EXPECT_THROW(pred::train(m, pred::PropertyDataset{}, {}, rng), stackrl::DataError);
}

TEST(Metrics, IdentitiesHoldExactly) {
  Rng rng(12);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 2 + stackrl::uniform_index(rng, 40);
    std::vector<double> t(n), p(n);
    for (std::size_t i = 0; i < n; ++i) {
      t[i] = stackrl::uniform(rng, -5, 5);
      p[i] = t[i] + stackrl::uniform(rng, -1, 1);
    }
    const auto m = pred::regression_metrics(t, p);
    EXPECT_EQ(m.r2, 1.0 - m.sse / m.sst);
    EXPECT_EQ(m.rmse, std::sqrt(m.sse / static_cast<double>(n)));
  }
  std::vector<double> flat = {1, 1, 1};
  EXPECT_TRUE(std::isnan(pred::regression_metrics(flat, flat).r2));
}

TEST(Folds, PartitionWithBalancedSizes) {
  Rng rng(13);
  for (std::size_t n : {5u, 17u, 100u, 101u}) {
    const auto fold = pred::assign_folds(n, 5, rng);
    std::vector<std::size_t> sizes(5, 0);
    for (std::size_t f : fold) ++sizes.at(f);
    const auto [lo, hi] = std::minmax_element(sizes.begin(), sizes.end());
    EXPECT_LE(*hi - *lo, 1u);
    EXPECT_EQ(std::accumulate(sizes.begin(), sizes.end(), std::size_t{0}), n);
  }
  EXPECT_THROW(pred::assign_folds(3, 5, rng), stackrl::DataError);
  EXPECT_THROW(pred::assign_folds(10, 1, rng), stackrl::DataError);
}

TEST(CrossValidate, AggregatesMatchRecomputedResiduals) {
  const auto strings = corpus_strings(60, 14);
  auto data = pred::oracle_dataset(strings, stackrl::chem::Feature::kCompositionScore);
  pred::PredictorConfig cfg;
  cfg.embedding_dim = 4;
  cfg.hidden_size = 6;
  cfg.dense_size = 6;
  pred::PredictorTrainOptions opt;
  opt.epochs = 2;
  Rng rng(15);
  const auto cv = pred::cross_validate(data, 5, cfg, opt, rng);
  ASSERT_EQ(cv.folds.size(), 5u);
  ASSERT_EQ(cv.predictions.size(), data.size());
  double sse = 0.0;
  std::set<std::size_t> seen;
  std::vector<double> fold_sse(5, 0.0);
  for (std::size_t i = 0; i < cv.predictions.size(); ++i) {
    const auto& p = cv.predictions[i];
    EXPECT_EQ(p.record, i);
    EXPECT_EQ(p.target, data.records[i].value);
    sse += (p.target - p.predicted) * (p.target - p.predicted);
    fold_sse[p.fold] += (p.target - p.predicted) * (p.target - p.predicted);
    seen.insert(p.record);
  }
  EXPECT_EQ(seen.size(), data.size());
  EXPECT_NEAR(cv.pooled.rmse, std::sqrt(sse / static_cast<double>(data.size())), 1e-12);
  EXPECT_EQ(cv.pooled.r2, 1.0 - cv.pooled.sse / cv.pooled.sst);
  double mean_r2 = 0.0;
  for (std::size_t f = 0; f < 5; ++f) {
    EXPECT_NEAR(cv.folds[f].sse, fold_sse[f], 1e-9);
    EXPECT_EQ(cv.folds[f].r2, 1.0 - cv.folds[f].sse / cv.folds[f].sst);
    mean_r2 += cv.folds[f].r2 / 5.0;
  }
  EXPECT_NEAR(cv.mean_r2, mean_r2, 1e-12);
}

TEST(CrossValidate, RejectsTinyDatasets) {
  auto data = pred::make_dataset({{"C", 1.0}, {"CC", 2.0}});
  Rng rng(1);
  EXPECT_THROW(pred::cross_validate(data, 5, {}, {}, rng), stackrl::DataError);
}

TEST(Dataset, ParseAverageAndValidate) {
  auto d = pred::parse_dataset("# units: kcal/mol\nCCO\t1.5\nCC\t2\n\nCCO\t2.5\n");
  EXPECT_EQ(d.units, "kcal/mol");
  ASSERT_EQ(d.size(), 2u);
  EXPECT_EQ(d.records[0].smiles, "CCO");
  EXPECT_EQ(d.records[0].value, 2.0);
  EXPECT_THROW(pred::parse_dataset("C1CC\t1.0\n"), stackrl::DataError);
  EXPECT_THROW(pred::parse_dataset("CCO 1.0\n"), stackrl::DataError);
  EXPECT_THROW(pred::parse_dataset("CCO\tabc\n"), stackrl::DataError);
  EXPECT_THROW(pred::parse_dataset("CCO\tnan\n"), stackrl::DataError);
}

TEST(Dataset, WriteReadRoundTrip) {
  auto path = std::filesystem::temp_directory_path() / "stackrl_dataset_test.tsv";
  auto d = pred::oracle_dataset({"CCO", "c1ccccc1", "CC(=O)O"}, stackrl::chem::Feature::kMolarMass);
  d.units = "g/mol";
  pred::write_dataset(path, d, "# header\n");
  auto back = pred::read_dataset(path);
  EXPECT_EQ(back.records, d.records);
  EXPECT_EQ(back.units, "g/mol");
}

TEST(Checkpoint, RoundTripIsByteIdentical) {
  auto m = random_model(20);
  m.config().target_scale = 3.25;
  m.config().target_offset = 0.1;
  auto dir = std::filesystem::temp_directory_path();
  pred::save_predictor(dir / "p1.ckpt", m);
  auto loaded = pred::load_predictor(dir / "p1.ckpt");
  pred::save_predictor(dir / "p2.ckpt", loaded);
  EXPECT_EQ(stackrl::io::read_text(dir / "p1.ckpt"), stackrl::io::read_text(dir / "p2.ckpt"));
  EXPECT_EQ(loaded.config(), m.config());
  EXPECT_EQ(pred::predict(loaded, "CCO"), pred::predict(m, "CCO"));
  EXPECT_EQ(stackrl::io::read_text(dir / "p1.ckpt").substr(0, 4), "PRED");
}
