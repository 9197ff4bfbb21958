#include "stackrl/reinforce/rollout.h"

#include "stackrl/chem/tokenizer.h"
#include "stackrl/chem/validator.h"
#include "stackrl/errors.h"
#include "stackrl/generator/sampling.h"

namespace stackrl::reinforce {

std::vector<double> Episode::step_rewards() const {
  std::vector<double> r(steps(), 0.0);
  if (!r.empty()) r.back() = reward;
  return r;
}

Episode make_episode(const generator::GeneratorModel& model, const RewardFunction& reward_fn,
                     chem::TokenSequence sequence, double log_prob) {
  Episode ep;
  ep.sequence = std::move(sequence);
  ep.log_prob = log_prob;
  ep.smiles = chem::detokenize(ep.sequence.ids, model.vocabulary());
  ep.valid = ep.sequence.terminal() && chem::validate(ep.smiles).valid;
  const auto scored = reward_fn.score(ep.smiles, ep.valid);
  ep.property = scored.property;
  ep.reward = scored.reward;
  return ep;
}

std::vector<Episode> rollout(const generator::GeneratorModel& model, const RewardFunction& reward_fn,
                             std::size_t n, Rng& rng) {
  if (n == 0) throw DataError("rollout: need at least one episode");
  std::vector<Episode> episodes;
  episodes.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto s = generator::sample_scored(model, rng);
    episodes.push_back(make_episode(model, reward_fn, std::move(s.sequence), s.log_prob));
  }
  return episodes;
}

}  // namespace stackrl::reinforce
