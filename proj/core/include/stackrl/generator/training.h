#ifndef STACKRL_GENERATOR_TRAINING_H_
#define STACKRL_GENERATOR_TRAINING_H_

#include <cstddef>
#include <functional>
#include <vector>

#include "stackrl/autodiff/optimizer.h"
#include "stackrl/generator/model.h"
#include "stackrl/random.h"

namespace stackrl::generator {

struct TrainOptions {
  std::size_t epochs = 10;
  double learning_rate = 0.1;
  double decay = 0.98;         // lr at epoch e is learning_rate * decay^e
  std::size_t batch_size = 16;
  double clip_norm = 5.0;      // <= 0 disables clipping
  autodiff::OptimizerKind optimizer = autodiff::OptimizerKind::kSgd;
  bool shuffle = true;
  // Called after every epoch with its index and mean loss.
  std::function<void(std::size_t, double)> on_epoch;
};

// Teacher-forced next-token cross-entropy over all steps of one sequence.
double sequence_cross_entropy(const GeneratorModel& model, const chem::TokenSequence& seq);

// Minibatch gradient descent on the per-token mean cross-entropy. Returns the
// mean per-token loss of each epoch (accumulated while training). Throws
// DataError on an empty corpus or a malformed sequence, NumericalError with
// epoch/batch diagnostics when the loss or a gradient stops being finite.
std::vector<double> train_supervised(GeneratorModel& model, const std::vector<chem::TokenSequence>& corpus,
                                     const TrainOptions& options, Rng& rng);

}  // namespace stackrl::generator

#endif  // STACKRL_GENERATOR_TRAINING_H_
