#ifndef STACKRL_PREDICTOR_TRAINING_H_
#define STACKRL_PREDICTOR_TRAINING_H_

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "stackrl/autodiff/optimizer.h"
#include "stackrl/predictor/dataset.h"
#include "stackrl/predictor/model.h"

namespace stackrl::predictor {

struct PredictorTrainOptions {
  std::size_t epochs = 30;
  double learning_rate = 0.003;
  double decay = 0.98;
  std::size_t batch_size = 16;
  double clip_norm = 5.0;
  autodiff::OptimizerKind optimizer = autodiff::OptimizerKind::kAdam;
  // Set target_scale/offset from the training targets before fitting.
  bool standardize = true;
  std::function<void(std::size_t, double)> on_epoch;
};

// Squared error of one record on the standardized scale, as a graph.
autodiff::NodeId build_squared_error(autodiff::Graph& graph, const PredictorConfig& config,
                                     const std::vector<chem::TokenId>& ids, double target);

// Minimizes mean squared error. Returns per-epoch MSE in target units.
// Throws DataError on an empty dataset, NumericalError on divergence.
std::vector<double> train(PredictorModel& model, const PropertyDataset& data,
                          const PredictorTrainOptions& options, Rng& rng);

struct RegressionMetrics {
  std::size_t n = 0;
  double sse = 0.0;
  double sst = 0.0;
  double rmse = 0.0;
  double r2 = 0.0;  // 1 - sse/sst; NaN when sst == 0
};

RegressionMetrics regression_metrics(std::span<const double> targets, std::span<const double> predictions);

struct CvPrediction {
  std::size_t record = 0;
  std::size_t fold = 0;
  double target = 0.0;
  double predicted = 0.0;
};

struct CrossValidationResult {
  std::vector<RegressionMetrics> folds;
  RegressionMetrics pooled;    // over all held-out predictions
  double mean_r2 = 0.0;
  double mean_rmse = 0.0;
  std::vector<CvPrediction> predictions;  // in record order
};

// Fold of each record: records are shuffled and position p goes to fold
// p % folds. Throws DataError when folds < 2 or the dataset is smaller.
std::vector<std::size_t> assign_folds(std::size_t n, std::size_t folds, Rng& rng);

// Trains a fresh model per fold on the other folds and scores the held-out
// one. All folds share one vocabulary built from the whole dataset.
CrossValidationResult cross_validate(const PropertyDataset& data, std::size_t folds, const PredictorConfig& config,
                                     const PredictorTrainOptions& options, Rng& rng);

}  // namespace stackrl::predictor

#endif  // STACKRL_PREDICTOR_TRAINING_H_
