#ifndef STACKRL_REINFORCE_POLICY_GRADIENT_H_
#define STACKRL_REINFORCE_POLICY_GRADIENT_H_

#include <vector>

#include "stackrl/autodiff/tensor.h"
#include "stackrl/generator/model.h"
#include "stackrl/reinforce/rollout.h"

namespace stackrl::reinforce {

// Gradient of the surrogate loss  -(1/N) sum_i (r_i - b) log p(seq_i),
// obtained by backpropagating each episode's term. Its negation is the
// REINFORCE estimate of the gradient of the expected reward. Throws
// DataError on an empty batch or an episode without steps.
autodiff::Gradients policy_gradient(const generator::GeneratorModel& model, const std::vector<Episode>& episodes,
                                    double baseline = 0.0);

// Exponential moving average of batch-mean rewards. Before the first update
// it reports whatever batch mean it is asked about.
class MovingAverageBaseline {
 public:
  explicit MovingAverageBaseline(double decay = 0.9) : decay_(decay) {}

  double value_for(double batch_mean) const { return initialized_ ? value_ : batch_mean; }
  void update(double batch_mean);
  bool initialized() const { return initialized_; }
  double value() const { return value_; }

 private:
  double decay_;
  double value_ = 0.0;
  bool initialized_ = false;
};

}  // namespace stackrl::reinforce

#endif  // STACKRL_REINFORCE_POLICY_GRADIENT_H_
