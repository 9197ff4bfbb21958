#ifndef STACKRL_REINFORCE_FINETUNE_H_
#define STACKRL_REINFORCE_FINETUNE_H_

#include <cstddef>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "stackrl/autodiff/optimizer.h"
#include "stackrl/generator/model.h"
#include "stackrl/reinforce/reward.h"

namespace stackrl::reinforce {

struct HistoryRow {
  std::size_t iteration = 0;
  double mean_reward = 0.0;
  double valid_fraction = 0.0;
  double mean_property = 0.0;  // over valid episodes; NaN when none
  double baseline = 0.0;
};

struct FinetuneOptions {
  std::size_t iterations = 100;
  std::size_t batch_size = 16;
  double learning_rate = 0.01;
  double decay = 1.0;            // lr at iteration i is learning_rate * decay^i
  double clip_norm = 5.0;
  autodiff::OptimizerKind optimizer = autodiff::OptimizerKind::kSgd;
  bool use_baseline = true;
  double baseline_decay = 0.9;
  // Written every checkpoint_every iterations and at the end when set.
  std::filesystem::path checkpoint_path;
  std::size_t checkpoint_every = 0;
  std::function<void(const HistoryRow&)> on_iteration;
};

// Repeats rollout -> policy_gradient -> update. On a non-finite reward,
// gradient or parameter the model is restored to the last finite
// parameters and NumericalError is thrown; checkpoints are only ever
// written from finite parameters. Throws DataError when batch_size < 8.
std::vector<HistoryRow> finetune(generator::GeneratorModel& model, const RewardFunction& reward_fn,
                                 const FinetuneOptions& options, Rng& rng);

// iteration,mean_reward,valid_fraction,mean_property preceded by `header`.
std::string history_csv(const std::vector<HistoryRow>& history, const std::string& header);

}  // namespace stackrl::reinforce

#endif  // STACKRL_REINFORCE_FINETUNE_H_
