#include "stackrl/autodiff/optimizer.h"

#include <cmath>

#include "stackrl/errors.h"

namespace stackrl::autodiff {

OptimizerKind parse_optimizer(std::string_view name) {
  if (name == "sgd") return OptimizerKind::kSgd;
  if (name == "adam") return OptimizerKind::kAdam;
  throw DataError("unknown optimizer '" + std::string(name) + "' (expected sgd or adam)");
}

std::string_view optimizer_name(OptimizerKind kind) {
  return kind == OptimizerKind::kSgd ? "sgd" : "adam";
}

double clip_global_norm(Gradients& grads, double max_norm) {
  const double norm = grads.global_norm();
  if (max_norm > 0.0 && norm > max_norm) grads.scale(max_norm / norm);
  return norm;
}

Optimizer::Optimizer(OptimizerKind kind, double beta1, double beta2, double epsilon)
    : kind_(kind), beta1_(beta1), beta2_(beta2), epsilon_(epsilon) {}

void Optimizer::step(NamedTensors& params, const Gradients& grads, double lr) {
  if (kind_ == OptimizerKind::kSgd) {
    for (auto& [name, p] : params.entries()) {
      const Tensor* g = grads.find(name);
      if (g == nullptr) continue;
      auto pv = p.data();
      auto gv = g->data();
      for (std::size_t i = 0; i < pv.size(); ++i) pv[i] -= lr * gv[i];
    }
    return;
  }

  if (first_.empty()) {
    first_ = params.zeros_like();
    second_ = params.zeros_like();
  }
  ++steps_;
  const double c1 = 1.0 - std::pow(beta1_, static_cast<double>(steps_));
  const double c2 = 1.0 - std::pow(beta2_, static_cast<double>(steps_));
  for (auto& [name, p] : params.entries()) {
    const Tensor* g = grads.find(name);
    if (g == nullptr) continue;
    auto pv = p.data();
    auto gv = g->data();
    auto m = first_.at(name).data();
    auto v = second_.at(name).data();
    for (std::size_t i = 0; i < pv.size(); ++i) {
      m[i] = beta1_ * m[i] + (1.0 - beta1_) * gv[i];
      v[i] = beta2_ * v[i] + (1.0 - beta2_) * gv[i] * gv[i];
      pv[i] -= lr * (m[i] / c1) / (std::sqrt(v[i] / c2) + epsilon_);
    }
  }
}

}  // namespace stackrl::autodiff
