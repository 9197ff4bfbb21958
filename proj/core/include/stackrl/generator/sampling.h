#ifndef STACKRL_GENERATOR_SAMPLING_H_
#define STACKRL_GENERATOR_SAMPLING_H_

#include <string>

#include "stackrl/generator/model.h"
#include "stackrl/random.h"

namespace stackrl::generator {

// Ancestral sampling from START until END or max_len generated tokens. A
// truncated result does not end with END. Temperature rescales the logits;
// temperature <= 0 picks the argmax at every step.
chem::TokenSequence sample(const GeneratorModel& model, Rng& rng, double temperature = 1.0);

// Sample drawn at temperature 1 together with its log-probability under the
// model, accumulated during sampling.
struct SampleWithLogProb {
  chem::TokenSequence sequence;
  double log_prob = 0.0;
};
SampleWithLogProb sample_scored(const GeneratorModel& model, Rng& rng);

// Sampled sequence decoded to text (reserved tokens dropped).
std::string sample_string(const GeneratorModel& model, Rng& rng, double temperature = 1.0);

}  // namespace stackrl::generator

#endif  // STACKRL_GENERATOR_SAMPLING_H_
