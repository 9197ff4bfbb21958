#include "stackrl/generator/sampling.h"

#include <algorithm>
#include <cmath>

#include "stackrl/chem/tokenizer.h"
#include "stackrl/generator/cell.h"

namespace stackrl::generator {

chem::TokenSequence sample(const GeneratorModel& model, Rng& rng, double temperature) {
  const GeneratorConfig& cfg = model.config();
  chem::TokenSequence seq;
  seq.ids.push_back(chem::kStart);
  CellState state = init_state(cfg);
  std::vector<double> weights;
  for (std::size_t t = 0; t < cfg.max_len; ++t) {
    StepResult step = cell_step(model, state, seq.ids.back());
    std::size_t choice;
    if (temperature <= 0.0) {
      choice = static_cast<std::size_t>(std::max_element(step.probs.begin(), step.probs.end()) -
                                        step.probs.begin());
    } else if (temperature == 1.0) {
      choice = sample_categorical(step.probs, rng);
    } else {
      weights.assign(step.probs.size(), 0.0);
      double max_log = -INFINITY;
      for (std::size_t i = chem::kEnd; i < step.probs.size(); ++i) {
        if (step.probs[i] > 0.0) max_log = std::max(max_log, std::log(step.probs[i]) / temperature);
      }
      for (std::size_t i = chem::kEnd; i < step.probs.size(); ++i) {
        if (step.probs[i] > 0.0) weights[i] = std::exp(std::log(step.probs[i]) / temperature - max_log);
      }
      choice = sample_categorical(weights, rng);
    }
    seq.ids.push_back(static_cast<chem::TokenId>(choice));
    state = std::move(step.state);
    if (choice == chem::kEnd) break;
  }
  return seq;
}

SampleWithLogProb sample_scored(const GeneratorModel& model, Rng& rng) {
  SampleWithLogProb out;
  out.sequence.ids.push_back(chem::kStart);
  CellState state = init_state(model.config());
  for (std::size_t t = 0; t < model.config().max_len; ++t) {
    StepResult step = cell_step(model, state, out.sequence.ids.back());
    const std::size_t choice = sample_categorical(step.probs, rng);
    out.log_prob += std::log(step.probs[choice]);
    out.sequence.ids.push_back(static_cast<chem::TokenId>(choice));
    state = std::move(step.state);
    if (choice == chem::kEnd) break;
  }
  return out;
}

std::string sample_string(const GeneratorModel& model, Rng& rng, double temperature) {
  const auto seq = sample(model, rng, temperature);
  return chem::detokenize(seq.ids, model.vocabulary());
}

}  // namespace stackrl::generator
