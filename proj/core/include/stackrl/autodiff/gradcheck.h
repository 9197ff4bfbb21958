#ifndef STACKRL_AUTODIFF_GRADCHECK_H_
#define STACKRL_AUTODIFF_GRADCHECK_H_

#include <cstddef>
#include <functional>
#include <string>

#include "stackrl/autodiff/graph.h"

namespace stackrl::autodiff {

// Builds a graph whose inputs are named like the tensors of the check point and
// returns its scalar output node.
using GraphBuilder = std::function<NodeId(Graph&)>;

struct GradientCheckReport {
  double max_relative_error = 0.0;
  std::string worst_input;
  std::size_t worst_index = 0;
  double worst_analytic = 0.0;
  double worst_numeric = 0.0;
  std::size_t coordinates = 0;
};

// |a - b| / max(|a|, |b|, 1e-8)
double relative_error(double a, double b);

// Compares backward() with central differences, one coordinate at a time,
// over every tensor in `point`. eps must lie in [1e-8, 1e-4].
GradientCheckReport check_gradient(const GraphBuilder& fn,
                                   const NamedTensors& point,
                                   double eps = 1e-6);

}  // namespace stackrl::autodiff

#endif  // STACKRL_AUTODIFF_GRADCHECK_H_
