#ifndef STACKRL_REINFORCE_ROLLOUT_H_
#define STACKRL_REINFORCE_ROLLOUT_H_

#include <optional>
#include <string>
#include <vector>

#include "stackrl/generator/model.h"
#include "stackrl/random.h"
#include "stackrl/reinforce/reward.h"

namespace stackrl::reinforce {

// One sampled string. The reward belongs to the final step only.
struct Episode {
  chem::TokenSequence sequence;
  std::string smiles;
  bool valid = false;
  std::optional<double> property;
  double reward = 0.0;
  double log_prob = 0.0;

  std::size_t steps() const { return sequence.size() > 0 ? sequence.size() - 1 : 0; }
  // Per-step rewards: zero everywhere except the last step.
  std::vector<double> step_rewards() const;
};

// Scores an already sampled sequence.
Episode make_episode(const generator::GeneratorModel& model, const RewardFunction& reward_fn,
                     chem::TokenSequence sequence, double log_prob);

// n independent samples, each decoded, validated and scored. Throws
// DataError when n == 0.
std::vector<Episode> rollout(const generator::GeneratorModel& model, const RewardFunction& reward_fn,
                             std::size_t n, Rng& rng);

}  // namespace stackrl::reinforce

#endif  // STACKRL_REINFORCE_ROLLOUT_H_
