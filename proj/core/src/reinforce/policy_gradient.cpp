#include "stackrl/reinforce/policy_gradient.h"

#include "stackrl/errors.h"
#include "stackrl/generator/cell.h"

namespace stackrl::reinforce {

autodiff::Gradients policy_gradient(const generator::GeneratorModel& model, const std::vector<Episode>& episodes,
                                    double baseline) {
  if (episodes.empty()) throw DataError("policy_gradient: no episodes");
  const double n = static_cast<double>(episodes.size());
  autodiff::Gradients total;
  for (const Episode& ep : episodes) {
    if (ep.steps() == 0) throw DataError("policy_gradient: episode with an empty sequence");
    const double coefficient = -(ep.reward - baseline) / n;
    total.accumulate(generator::log_prob_gradient(model, ep.sequence, coefficient).gradient);
  }
  return total;
}

void MovingAverageBaseline::update(double batch_mean) {
  if (!initialized_) {
    value_ = batch_mean;
    initialized_ = true;
  } else {
    value_ = decay_ * value_ + (1.0 - decay_) * batch_mean;
  }
}

}  // namespace stackrl::reinforce
