#include "stackrl/autodiff/gradcheck.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace stackrl::autodiff {

double relative_error(double a, double b) {
  const double denom = std::max({std::abs(a), std::abs(b), 1e-8});
  return std::abs(a - b) / denom;
}

GradientCheckReport check_gradient(const GraphBuilder& fn,
                                   const NamedTensors& point, double eps) {
  if (!(eps >= 1e-8 && eps <= 1e-4)) {
    throw std::invalid_argument("check_gradient: eps must lie in [1e-8, 1e-4]");
  }
  Graph graph;
  const NodeId out = fn(graph);
  const Values values = forward(graph, point);
  const Gradients analytic = backward(graph, values, out);

  GradientCheckReport report;
  NamedTensors probe = point;
  for (auto& [name, tensor] : probe.entries()) {
    const Tensor* grad = analytic.find(name);
    for (std::size_t i = 0; i < tensor.size(); ++i) {
      const double saved = tensor[i];
      tensor[i] = saved + eps;
      const double plus = forward(graph, probe).scalar(out);
      tensor[i] = saved - eps;
      const double minus = forward(graph, probe).scalar(out);
      tensor[i] = saved;

      const double numeric = (plus - minus) / (2.0 * eps);
      const double a = grad ? (*grad)[i] : 0.0;
      const double err = relative_error(a, numeric);
      ++report.coordinates;
      if (report.worst_input.empty() || err > report.max_relative_error) {
        report.max_relative_error = err;
        report.worst_input = name;
        report.worst_index = i;
        report.worst_analytic = a;
        report.worst_numeric = numeric;
      }
    }
  }
  return report;
}

}  // namespace stackrl::autodiff
