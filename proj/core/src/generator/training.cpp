#include "stackrl/generator/training.h"

#include <cmath>
#include <numeric>
#include <string>

#include "stackrl/errors.h"
#include "stackrl/generator/cell.h"

namespace stackrl::generator {

double sequence_cross_entropy(const GeneratorModel& model, const chem::TokenSequence& seq) {
  return -sequence_log_prob(model, seq);
}

std::vector<double> train_supervised(GeneratorModel& model, const std::vector<chem::TokenSequence>& corpus,
                                     const TrainOptions& options, Rng& rng) {
  if (corpus.empty()) throw DataError("train_supervised: empty corpus");
  if (options.batch_size == 0) throw DataError("train_supervised: batch_size must be positive");
  for (const auto& seq : corpus) check_sequence(model.config(), seq);

  autodiff::Optimizer optimizer(options.optimizer);
  std::vector<std::size_t> order(corpus.size());
  std::iota(order.begin(), order.end(), 0);
  std::vector<double> history;
  history.reserve(options.epochs);

  for (std::size_t epoch = 0; epoch < options.epochs; ++epoch) {
    if (options.shuffle) shuffle(order, rng);
    const double lr = options.learning_rate * std::pow(options.decay, static_cast<double>(epoch));
    double epoch_loss = 0.0;
    std::size_t epoch_tokens = 0;
    for (std::size_t start = 0, batch = 0; start < order.size(); start += options.batch_size, ++batch) {
      const std::size_t end = std::min(order.size(), start + options.batch_size);
      std::size_t tokens = 0;
      for (std::size_t i = start; i < end; ++i) tokens += corpus[order[i]].size() - 1;
      const double coefficient = -1.0 / static_cast<double>(tokens);
      autodiff::Gradients grads;
      double batch_loss = 0.0;
      try {
        for (std::size_t i = start; i < end; ++i) {
          auto r = log_prob_gradient(model, corpus[order[i]], coefficient);
          batch_loss -= r.log_prob;
          grads.accumulate(r.gradient);
        }
      } catch (const NumericalError& e) {
        throw NumericalError("train_supervised: epoch " + std::to_string(epoch) + ", batch " +
                             std::to_string(batch) + ": " + e.what());
      }
      if (!std::isfinite(batch_loss) || !grads.all_finite()) {
        throw NumericalError("train_supervised: epoch " + std::to_string(epoch) + ", batch " +
                             std::to_string(batch) + ": non-finite loss or gradient (loss " +
                             std::to_string(batch_loss) + ")");
      }
      autodiff::clip_global_norm(grads, options.clip_norm);
      optimizer.step(model.parameters(), grads, lr);
      epoch_loss += batch_loss;
      epoch_tokens += tokens;
    }
    const double mean = epoch_loss / static_cast<double>(epoch_tokens);
    history.push_back(mean);
    if (options.on_epoch) options.on_epoch(epoch, mean);
  }
  return history;
}

}  // namespace stackrl::generator
