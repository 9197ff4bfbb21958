#include "stackrl/reinforce/finetune.h"

#include <cmath>
#include <limits>

#include "stackrl/errors.h"
#include "stackrl/generator/checkpoint.h"
#include "stackrl/io/text.h"
#include "stackrl/reinforce/policy_gradient.h"
#include "stackrl/reinforce/rollout.h"

namespace stackrl::reinforce {

std::vector<HistoryRow> finetune(generator::GeneratorModel& model, const RewardFunction& reward_fn,
                                 const FinetuneOptions& options, Rng& rng) {
  if (options.batch_size < 8) throw DataError("finetune: batch_size must be at least 8");
  autodiff::Optimizer optimizer(options.optimizer);
  MovingAverageBaseline baseline(options.baseline_decay);
  autodiff::NamedTensors last_good = model.parameters();
  std::vector<HistoryRow> history;

  auto abort = [&](std::size_t it, const std::string& what) {
    model.parameters() = last_good;
    throw NumericalError("finetune: iteration " + std::to_string(it) + ": " + what +
                         "; parameters restored to the last finite state");
  };

  for (std::size_t it = 0; it < options.iterations; ++it) {
    const auto episodes = rollout(model, reward_fn, options.batch_size, rng);
    HistoryRow row;
    row.iteration = it;
    std::size_t valid = 0, scored = 0;
    double prop_sum = 0.0;
    for (const auto& ep : episodes) {
      row.mean_reward += ep.reward;
      if (ep.valid) {
        ++valid;
        if (ep.property) {
          ++scored;
          prop_sum += *ep.property;
        }
      }
    }
    row.mean_reward /= static_cast<double>(episodes.size());
    row.valid_fraction = static_cast<double>(valid) / static_cast<double>(episodes.size());
    row.mean_property = scored > 0 ? prop_sum / static_cast<double>(scored) : std::numeric_limits<double>::quiet_NaN();
    if (!std::isfinite(row.mean_reward)) abort(it, "mean reward is not finite");

    const double b = options.use_baseline ? baseline.value_for(row.mean_reward) : 0.0;
    row.baseline = b;
    autodiff::Gradients grads;
    try {
      grads = policy_gradient(model, episodes, b);
    } catch (const NumericalError& e) {
      abort(it, e.what());
    }
    if (!grads.all_finite()) abort(it, "policy gradient is not finite");
    autodiff::clip_global_norm(grads, options.clip_norm);
    const double lr = options.learning_rate * std::pow(options.decay, static_cast<double>(it));
    optimizer.step(model.parameters(), grads, lr);
    if (!model.parameters().all_finite()) abort(it, "parameters became non-finite");
    last_good = model.parameters();
    if (options.use_baseline) baseline.update(row.mean_reward);

    history.push_back(row);
    if (options.on_iteration) options.on_iteration(row);
    const bool periodic = options.checkpoint_every > 0 && (it + 1) % options.checkpoint_every == 0;
    if (!options.checkpoint_path.empty() && periodic) generator::save_generator(options.checkpoint_path, model);
  }
  if (!options.checkpoint_path.empty()) generator::save_generator(options.checkpoint_path, model);
  return history;
}

std::string history_csv(const std::vector<HistoryRow>& history, const std::string& header) {
  std::string out = header + "iteration,mean_reward,valid_fraction,mean_property\n";
  for (const auto& r : history) {
    out += std::to_string(r.iteration) + "," + io::format_double(r.mean_reward) + "," +
           io::format_double(r.valid_fraction) + "," + io::format_double(r.mean_property) + "\n";
  }
  return out;
}

}  // namespace stackrl::reinforce
