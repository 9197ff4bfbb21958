#ifndef STACKRL_AUTODIFF_OPTIMIZER_H_
#define STACKRL_AUTODIFF_OPTIMIZER_H_

#include <string>
#include <string_view>

#include "stackrl/autodiff/tensor.h"

namespace stackrl::autodiff {

enum class OptimizerKind { kSgd, kAdam };

OptimizerKind parse_optimizer(std::string_view name);
std::string_view optimizer_name(OptimizerKind kind);

// Rescales `grads` in place so that its global L2 norm is at most max_norm.
// Returns the norm before clipping. max_norm <= 0 disables clipping.
double clip_global_norm(Gradients& grads, double max_norm);

// Gradient-descent step on named parameters. Adam keeps per-parameter moment
// estimates, so one Optimizer instance belongs to one parameter set.
class Optimizer {
 public:
  explicit Optimizer(OptimizerKind kind = OptimizerKind::kSgd,
                     double beta1 = 0.9, double beta2 = 0.999,
                     double epsilon = 1e-8);

  void step(NamedTensors& params, const Gradients& grads, double lr);
  OptimizerKind kind() const { return kind_; }

 private:
  OptimizerKind kind_;
  double beta1_;
  double beta2_;
  double epsilon_;
  long steps_ = 0;
  NamedTensors first_;
  NamedTensors second_;
};

}  // namespace stackrl::autodiff

#endif  // STACKRL_AUTODIFF_OPTIMIZER_H_
