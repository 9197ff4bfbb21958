#include "stackrl/predictor/training.h"

#include <cmath>
#include <limits>
#include <numeric>

#include "stackrl/errors.h"

namespace stackrl::predictor {

using autodiff::Graph;
using autodiff::NodeId;

NodeId build_squared_error(Graph& g, const PredictorConfig& config, const std::vector<chem::TokenId>& ids,
                           double target) {
  const NodeId out = build_network(g, config, ids);
  const NodeId diff = g.add(out, g.constant(autodiff::Tensor::vector({-target})));
  return g.sum(g.hadamard(diff, diff));
}

std::vector<double> train(PredictorModel& model, const PropertyDataset& data, const PredictorTrainOptions& options,
                          Rng& rng) {
  if (data.empty()) throw DataError("predictor train: empty dataset");
  if (options.batch_size == 0) throw DataError("predictor train: batch_size must be positive");
  const std::size_t n = data.size();

  if (options.standardize) {
    double mean = 0.0;
    for (const auto& r : data.records) mean += r.value;
    mean /= static_cast<double>(n);
    double var = 0.0;
    for (const auto& r : data.records) var += (r.value - mean) * (r.value - mean);
    var /= static_cast<double>(n);
    model.config().target_offset = mean;
    model.config().target_scale = var > 0.0 ? std::sqrt(var) : 1.0;
  }
  const double scale = model.config().target_scale;
  const double offset = model.config().target_offset;

  std::vector<std::vector<chem::TokenId>> inputs;
  std::vector<double> targets;
  for (const auto& r : data.records) {
    inputs.push_back(predictor_input(model, r.smiles));
    targets.push_back((r.value - offset) / scale);
  }

  autodiff::Optimizer optimizer(options.optimizer);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::vector<double> history;
  for (std::size_t epoch = 0; epoch < options.epochs; ++epoch) {
    shuffle(order, rng);
    const double lr = options.learning_rate * std::pow(options.decay, static_cast<double>(epoch));
    double total = 0.0;
    for (std::size_t start = 0, batch = 0; start < n; start += options.batch_size, ++batch) {
      const std::size_t end = std::min(n, start + options.batch_size);
      const double weight = 1.0 / static_cast<double>(end - start);
      autodiff::Gradients grads;
      try {
        for (std::size_t i = start; i < end; ++i) {
          Graph g;
          const NodeId loss = build_squared_error(g, model.config(), inputs[order[i]], targets[order[i]]);
          const NodeId seed = g.scale(loss, weight);
          const auto values = autodiff::forward(g, model.parameters());
          total += values.scalar(loss);
          grads.accumulate(autodiff::backward(g, values, seed));
        }
      } catch (const NumericalError& e) {
        throw NumericalError("predictor train: epoch " + std::to_string(epoch) + ", batch " +
                             std::to_string(batch) + ": " + e.what());
      }
      if (!grads.all_finite()) {
        throw NumericalError("predictor train: epoch " + std::to_string(epoch) + ", batch " +
                             std::to_string(batch) + ": non-finite gradient");
      }
      autodiff::clip_global_norm(grads, options.clip_norm);
      optimizer.step(model.parameters(), grads, lr);
    }
    const double mse = total / static_cast<double>(n) * scale * scale;
    if (!std::isfinite(mse)) throw NumericalError("predictor train: epoch " + std::to_string(epoch) + ": loss is not finite");
    history.push_back(mse);
    if (options.on_epoch) options.on_epoch(epoch, mse);
  }
  return history;
}

RegressionMetrics regression_metrics(std::span<const double> targets, std::span<const double> predictions) {
  if (targets.size() != predictions.size()) throw std::invalid_argument("regression_metrics: size mismatch");
  RegressionMetrics m;
  m.n = targets.size();
  if (m.n == 0) return m;
  double mean = 0.0;
  for (double t : targets) mean += t;
  mean /= static_cast<double>(m.n);
  for (std::size_t i = 0; i < m.n; ++i) {
    const double residual = targets[i] - predictions[i];
    m.sse += residual * residual;
    m.sst += (targets[i] - mean) * (targets[i] - mean);
  }
  m.rmse = std::sqrt(m.sse / static_cast<double>(m.n));
  m.r2 = m.sst > 0.0 ? 1.0 - m.sse / m.sst : std::numeric_limits<double>::quiet_NaN();
  return m;
}

std::vector<std::size_t> assign_folds(std::size_t n, std::size_t folds, Rng& rng) {
  if (folds < 2) throw DataError("cross-validation needs at least 2 folds");
  if (n < folds) {
    throw DataError("cross-validation: " + std::to_string(n) + " records cannot fill " + std::to_string(folds) +
                    " folds");
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  shuffle(order, rng);
  std::vector<std::size_t> fold(n);
  for (std::size_t p = 0; p < n; ++p) fold[order[p]] = p % folds;
  return fold;
}

CrossValidationResult cross_validate(const PropertyDataset& data, std::size_t folds, const PredictorConfig& config,
                                     const PredictorTrainOptions& options, Rng& rng) {
  const auto fold_of = assign_folds(data.size(), folds, rng);
  const auto vocab = predictor_vocabulary(data.smiles());
  PredictorConfig cfg = config;
  cfg.vocab_size = vocab.size();

  CrossValidationResult result;
  result.predictions.resize(data.size());
  for (std::size_t f = 0; f < folds; ++f) {
    PropertyDataset train_set;
    std::vector<std::size_t> held_out;
    for (std::size_t i = 0; i < data.size(); ++i) {
      if (fold_of[i] == f) held_out.push_back(i);
      else train_set.records.push_back(data.records[i]);
    }
    PredictorModel model(cfg, vocab, rng);
    train(model, train_set, options, rng);
    std::vector<double> t, p;
    for (std::size_t i : held_out) {
      const double pred = predict(model, data.records[i].smiles);
      result.predictions[i] = {i, f, data.records[i].value, pred};
      t.push_back(data.records[i].value);
      p.push_back(pred);
    }
    result.folds.push_back(regression_metrics(t, p));
  }
  std::vector<double> all_t, all_p;
  for (const auto& cp : result.predictions) {
    all_t.push_back(cp.target);
    all_p.push_back(cp.predicted);
  }
  result.pooled = regression_metrics(all_t, all_p);
  for (const auto& m : result.folds) {
    result.mean_r2 += m.r2;
    result.mean_rmse += m.rmse;
  }
  result.mean_r2 /= static_cast<double>(folds);
  result.mean_rmse /= static_cast<double>(folds);
  return result;
}

}  // namespace stackrl::predictor
