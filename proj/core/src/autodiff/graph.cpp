#include "stackrl/autodiff/graph.h"

#include <algorithm>
#include <cmath>

#include "stackrl/errors.h"

namespace stackrl::autodiff {

std::string_view op_name(Op op) {
  switch (op) {
    case Op::kInput: return "input";
    case Op::kConstant: return "constant";
    case Op::kMatMul: return "matmul";
    case Op::kAdd: return "add";
    case Op::kHadamard: return "hadamard";
    case Op::kConcat: return "concat";
    case Op::kRowSelect: return "row_select";
    case Op::kSigmoid: return "sigmoid";
    case Op::kTanh: return "tanh";
    case Op::kRelu: return "relu";
    case Op::kSoftmax: return "softmax";
    case Op::kLog: return "log";
    case Op::kSum: return "sum";
    case Op::kScale: return "scale";
    case Op::kReshape: return "reshape";
  }
  return "unknown";
}

void Graph::fail(Op op, const std::string& what) const {
  throw ShapeError("node " + std::to_string(nodes_.size()) + " (" +
                   std::string(op_name(op)) + "): " + what);
}

void Graph::check(NodeId id) const {
  if (id.index >= nodes_.size()) {
    throw ShapeError("node " + std::to_string(nodes_.size()) +
                     ": refers to undefined node " + std::to_string(id.index));
  }
}

NodeId Graph::push(Node node) {
  nodes_.push_back(std::move(node));
  return NodeId{static_cast<std::uint32_t>(nodes_.size() - 1)};
}

NodeId Graph::input(std::string name, Shape shape) {
  if (shape.empty() || shape.size() > 2 || element_count(shape) == 0) {
    fail(Op::kInput, "invalid shape " + shape_string(shape) + " for '" + name + "'");
  }
  if (auto it = input_ids_.find(name); it != input_ids_.end()) {
    if (nodes_[it->second.index].shape != shape) {
      fail(Op::kInput, "input '" + name + "' redeclared with shape " +
                           shape_string(shape));
    }
    return it->second;
  }
  Node n;
  n.op = Op::kInput;
  n.shape = std::move(shape);
  n.name = name;
  NodeId id = push(std::move(n));
  input_ids_.emplace(std::move(name), id);
  return id;
}

NodeId Graph::constant(Tensor value) {
  if (value.size() == 0) fail(Op::kConstant, "empty constant");
  Node n;
  n.op = Op::kConstant;
  n.shape = value.shape();
  n.value = std::move(value);
  return push(std::move(n));
}

NodeId Graph::matmul(NodeId a, NodeId b) {
  check(a);
  check(b);
  const Shape& sa = shape(a);
  const Shape& sb = shape(b);
  if (sa.size() != 2) fail(Op::kMatMul, "left operand must be a matrix, got " + shape_string(sa));
  if (sb[0] != sa[1]) {
    fail(Op::kMatMul, "inner dimensions differ: " + shape_string(sa) + " x " + shape_string(sb));
  }
  Node n;
  n.op = Op::kMatMul;
  n.shape = sb.size() == 1 ? Shape{sa[0]} : Shape{sa[0], sb[1]};
  n.inputs = {a, b};
  return push(std::move(n));
}

NodeId Graph::add(NodeId a, NodeId b) {
  check(a);
  check(b);
  if (shape(a) != shape(b)) {
    fail(Op::kAdd, "shapes differ: " + shape_string(shape(a)) + " vs " + shape_string(shape(b)));
  }
  Node n;
  n.op = Op::kAdd;
  n.shape = shape(a);
  n.inputs = {a, b};
  return push(std::move(n));
}

NodeId Graph::hadamard(NodeId a, NodeId b) {
  check(a);
  check(b);
  const Shape& sa = shape(a);
  const Shape& sb = shape(b);
  Node n;
  n.op = Op::kHadamard;
  if (sa == sb) {
    n.shape = sa;
  } else if (element_count(sb) == 1) {
    n.shape = sa;
  } else if (element_count(sa) == 1) {
    n.shape = sb;
  } else {
    fail(Op::kHadamard, "shapes differ: " + shape_string(sa) + " vs " + shape_string(sb));
  }
  n.inputs = {a, b};
  return push(std::move(n));
}

NodeId Graph::concat(const std::vector<NodeId>& parts) {
  if (parts.empty()) fail(Op::kConcat, "no operands");
  for (NodeId p : parts) check(p);
  const Shape& first = shape(parts[0]);
  Node n;
  n.op = Op::kConcat;
  if (first.size() == 1) {
    std::size_t total = 0;
    for (NodeId p : parts) {
      if (shape(p).size() != 1) fail(Op::kConcat, "mixed ranks");
      total += shape(p)[0];
    }
    n.shape = {total};
  } else {
    std::size_t rows = 0;
    for (NodeId p : parts) {
      if (shape(p).size() != 2 || shape(p)[1] != first[1]) {
        fail(Op::kConcat, "row concat needs equal column counts, got " +
                              shape_string(shape(p)) + " vs " + shape_string(first));
      }
      rows += shape(p)[0];
    }
    n.shape = {rows, first[1]};
  }
  n.inputs = parts;
  return push(std::move(n));
}

NodeId Graph::row_select(NodeId a, std::vector<std::size_t> indices) {
  check(a);
  const Shape& sa = shape(a);
  if (indices.empty()) fail(Op::kRowSelect, "empty index list");
  for (std::size_t i : indices) {
    if (i >= sa[0]) {
      fail(Op::kRowSelect, "index " + std::to_string(i) + " out of range for " + shape_string(sa));
    }
  }
  Node n;
  n.op = Op::kRowSelect;
  n.shape = sa.size() == 1 ? Shape{indices.size()} : Shape{indices.size(), sa[1]};
  n.inputs = {a};
  n.indices = std::move(indices);
  return push(std::move(n));
}

namespace {

Node unary(Op op, NodeId a, const Shape& shape) {
  Node n;
  n.op = op;
  n.shape = shape;
  n.inputs = {a};
  return n;
}

}  // namespace

NodeId Graph::sigmoid(NodeId a) { check(a); return push(unary(Op::kSigmoid, a, shape(a))); }
NodeId Graph::tanh(NodeId a) { check(a); return push(unary(Op::kTanh, a, shape(a))); }
NodeId Graph::relu(NodeId a) { check(a); return push(unary(Op::kRelu, a, shape(a))); }
NodeId Graph::log(NodeId a) { check(a); return push(unary(Op::kLog, a, shape(a))); }

NodeId Graph::softmax(NodeId a) {
  check(a);
  if (shape(a).size() != 1) fail(Op::kSoftmax, "expects a vector, got " + shape_string(shape(a)));
  return push(unary(Op::kSoftmax, a, shape(a)));
}

NodeId Graph::sum(NodeId a) {
  check(a);
  return push(unary(Op::kSum, a, Shape{1}));
}

NodeId Graph::scale(NodeId a, double factor) {
  check(a);
  Node n = unary(Op::kScale, a, shape(a));
  n.factor = factor;
  return push(std::move(n));
}

NodeId Graph::reshape(NodeId a, Shape new_shape) {
  check(a);
  if (new_shape.empty() || new_shape.size() > 2 ||
      element_count(new_shape) != element_count(shape(a))) {
    fail(Op::kReshape, "cannot reshape " + shape_string(shape(a)) + " to " + shape_string(new_shape));
  }
  return push(unary(Op::kReshape, a, new_shape));
}

NodeId Graph::sub(NodeId a, NodeId b) { return add(a, scale(b, -1.0)); }

namespace {

[[noreturn]] void numerical_failure(std::size_t index, Op op) {
  throw NumericalError("node " + std::to_string(index) + " (" + std::string(op_name(op)) +
                       ") produced a non-finite value");
}

void eval_matmul(const Tensor& a, const Tensor& b, Tensor& out) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  const std::size_t p = b.rank() == 1 ? 1 : b.cols();
  const double* A = a.data().data();
  const double* B = b.data().data();
  double* C = out.data().data();
  if (p == 1) {
    for (std::size_t i = 0; i < m; ++i) {
      const double* row = A + i * n;
      double acc = 0.0;
      for (std::size_t k = 0; k < n; ++k) acc += row[k] * B[k];
      C[i] = acc;
    }
    return;
  }
  std::fill(C, C + m * p, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      const double aik = A[i * n + k];
      const double* brow = B + k * p;
      double* crow = C + i * p;
      for (std::size_t j = 0; j < p; ++j) crow[j] += aik * brow[j];
    }
  }
}

}  // namespace

Values forward(const Graph& graph, const NamedTensors& inputs) {
  const auto& nodes = graph.nodes();
  Values values;
  values.owned_.resize(nodes.size());
  values.view_.resize(nodes.size(), nullptr);

  for (std::size_t idx = 0; idx < nodes.size(); ++idx) {
    const Node& node = nodes[idx];
    if (node.op == Op::kInput) {
      const Tensor* bound = inputs.find(node.name);
      if (bound == nullptr) {
        throw ShapeError("node " + std::to_string(idx) + " (input): '" + node.name + "' is not bound");
      }
      if (bound->shape() != node.shape) {
        throw ShapeError("node " + std::to_string(idx) + " (input): '" + node.name + "' bound with shape " +
                         shape_string(bound->shape()) + ", expected " + shape_string(node.shape));
      }
      if (!bound->all_finite()) numerical_failure(idx, node.op);
      values.view_[idx] = bound;
      continue;
    }
    if (node.op == Op::kConstant) {
      if (!node.value.all_finite()) numerical_failure(idx, node.op);
      values.view_[idx] = &node.value;
      continue;
    }

    Tensor out(node.shape);
    auto y = out.data();
    auto in = [&](std::size_t k) -> const Tensor& { return *values.view_[node.inputs[k].index]; };

    switch (node.op) {
      case Op::kMatMul:
        eval_matmul(in(0), in(1), out);
        break;
      case Op::kAdd: {
        auto a = in(0).data();
        auto b = in(1).data();
        for (std::size_t i = 0; i < y.size(); ++i) y[i] = a[i] + b[i];
        break;
      }
      case Op::kHadamard: {
        const Tensor& a = in(0);
        const Tensor& b = in(1);
        if (a.size() == b.size()) {
          for (std::size_t i = 0; i < y.size(); ++i) y[i] = a[i] * b[i];
        } else if (b.size() == 1) {
          for (std::size_t i = 0; i < y.size(); ++i) y[i] = a[i] * b[0];
        } else {
          for (std::size_t i = 0; i < y.size(); ++i) y[i] = a[0] * b[i];
        }
        break;
      }
      case Op::kConcat: {
        std::size_t offset = 0;
        for (std::size_t k = 0; k < node.inputs.size(); ++k) {
          auto part = in(k).data();
          std::copy(part.begin(), part.end(), y.begin() + offset);
          offset += part.size();
        }
        break;
      }
      case Op::kRowSelect: {
        const Tensor& a = in(0);
        const std::size_t width = a.rank() == 1 ? 1 : a.cols();
        for (std::size_t r = 0; r < node.indices.size(); ++r) {
          const double* src = a.data().data() + node.indices[r] * width;
          std::copy(src, src + width, y.begin() + r * width);
        }
        break;
      }
      case Op::kSigmoid: {
        auto a = in(0).data();
        for (std::size_t i = 0; i < y.size(); ++i) y[i] = 1.0 / (1.0 + std::exp(-a[i]));
        break;
      }
      case Op::kTanh: {
        auto a = in(0).data();
        for (std::size_t i = 0; i < y.size(); ++i) y[i] = std::tanh(a[i]);
        break;
      }
      case Op::kRelu: {
        auto a = in(0).data();
        for (std::size_t i = 0; i < y.size(); ++i) y[i] = a[i] > 0.0 ? a[i] : 0.0;
        break;
      }
      case Op::kSoftmax: {
        auto a = in(0).data();
        const double mx = *std::max_element(a.begin(), a.end());
        double total = 0.0;
        for (std::size_t i = 0; i < y.size(); ++i) {
          y[i] = std::exp(a[i] - mx);
          total += y[i];
        }
        for (double& v : y) v /= total;
        break;
      }
      case Op::kLog: {
        auto a = in(0).data();
        for (std::size_t i = 0; i < y.size(); ++i) y[i] = std::log(a[i]);
        break;
      }
      case Op::kSum: {
        double s = 0.0;
        for (double v : in(0).data()) s += v;
        y[0] = s;
        break;
      }
      case Op::kScale: {
        auto a = in(0).data();
        for (std::size_t i = 0; i < y.size(); ++i) y[i] = node.factor * a[i];
        break;
      }
      case Op::kReshape: {
        auto a = in(0).data();
        std::copy(a.begin(), a.end(), y.begin());
        break;
      }
      case Op::kInput:
      case Op::kConstant:
        break;
    }
    if (!out.all_finite()) numerical_failure(idx, node.op);
    values.owned_[idx] = std::move(out);
    values.view_[idx] = &values.owned_[idx];
  }
  return values;
}

Gradients backward(const Graph& graph, const Values& values, NodeId seed) {
  const auto& nodes = graph.nodes();
  if (seed.index >= nodes.size()) throw ShapeError("backward: seed node does not exist");
  if (element_count(nodes[seed.index].shape) != 1) {
    throw ShapeError("backward: seed node " + std::to_string(seed.index) + " has shape " +
                     shape_string(nodes[seed.index].shape) + ", expected a scalar");
  }
  if (values.size() != nodes.size()) throw ShapeError("backward: values do not belong to this graph");

  std::vector<Tensor> grad(nodes.size());
  std::vector<bool> live(nodes.size(), false);
  auto touch = [&](NodeId id) -> Tensor& {
    if (!live[id.index]) {
      grad[id.index] = Tensor(nodes[id.index].shape);
      live[id.index] = true;
    }
    return grad[id.index];
  };
  touch(seed)[0] = 1.0;

  for (std::size_t idx = seed.index + 1; idx-- > 0;) {
    if (!live[idx]) continue;
    const Node& node = nodes[idx];
    if (node.op == Op::kInput || node.op == Op::kConstant) continue;
    const Tensor& g = grad[idx];
    const Tensor& y = values[NodeId{static_cast<std::uint32_t>(idx)}];
    auto val = [&](std::size_t k) -> const Tensor& { return values[node.inputs[k]]; };
    auto skip = [&](std::size_t k) { return nodes[node.inputs[k].index].op == Op::kConstant; };

    switch (node.op) {
      case Op::kMatMul: {
        const Tensor& a = val(0);
        const Tensor& b = val(1);
        const std::size_t m = a.rows();
        const std::size_t n = a.cols();
        const std::size_t p = b.rank() == 1 ? 1 : b.cols();
        if (!skip(0)) {
          double* ga = touch(node.inputs[0]).data().data();
          for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t j = 0; j < p; ++j) {
              const double gij = g[i * p + j];
              if (gij == 0.0) continue;
              double* row = ga + i * n;
              for (std::size_t k = 0; k < n; ++k) row[k] += gij * b[k * p + j];
            }
          }
        }
        if (!skip(1)) {
          double* gb = touch(node.inputs[1]).data().data();
          for (std::size_t i = 0; i < m; ++i) {
            const double* row = a.data().data() + i * n;
            for (std::size_t j = 0; j < p; ++j) {
              const double gij = g[i * p + j];
              if (gij == 0.0) continue;
              for (std::size_t k = 0; k < n; ++k) gb[k * p + j] += row[k] * gij;
            }
          }
        }
        break;
      }
      case Op::kAdd: {
        for (std::size_t k = 0; k < 2; ++k) {
          if (skip(k)) continue;
          auto ga = touch(node.inputs[k]).data();
          for (std::size_t i = 0; i < g.size(); ++i) ga[i] += g[i];
        }
        break;
      }
      case Op::kHadamard: {
        const Tensor& a = val(0);
        const Tensor& b = val(1);
        for (std::size_t k = 0; k < 2; ++k) {
          if (skip(k)) continue;
          const Tensor& self = k == 0 ? a : b;
          const Tensor& other = k == 0 ? b : a;
          auto gs = touch(node.inputs[k]).data();
          if (self.size() == other.size()) {
            for (std::size_t i = 0; i < g.size(); ++i) gs[i] += g[i] * other[i];
          } else if (self.size() == 1) {
            double acc = 0.0;
            for (std::size_t i = 0; i < g.size(); ++i) acc += g[i] * other[i];
            gs[0] += acc;
          } else {
            for (std::size_t i = 0; i < g.size(); ++i) gs[i] += g[i] * other[0];
          }
        }
        break;
      }
      case Op::kConcat: {
        std::size_t offset = 0;
        for (std::size_t k = 0; k < node.inputs.size(); ++k) {
          const std::size_t len = val(k).size();
          if (!skip(k)) {
            auto gp = touch(node.inputs[k]).data();
            for (std::size_t i = 0; i < len; ++i) gp[i] += g[offset + i];
          }
          offset += len;
        }
        break;
      }
      case Op::kRowSelect: {
        if (skip(0)) break;
        const Tensor& a = val(0);
        const std::size_t width = a.rank() == 1 ? 1 : a.cols();
        auto ga = touch(node.inputs[0]).data();
        for (std::size_t r = 0; r < node.indices.size(); ++r) {
          const std::size_t base = node.indices[r] * width;
          for (std::size_t c = 0; c < width; ++c) ga[base + c] += g[r * width + c];
        }
        break;
      }
      case Op::kSigmoid: {
        if (skip(0)) break;
        auto ga = touch(node.inputs[0]).data();
        for (std::size_t i = 0; i < g.size(); ++i) ga[i] += g[i] * y[i] * (1.0 - y[i]);
        break;
      }
      case Op::kTanh: {
        if (skip(0)) break;
        auto ga = touch(node.inputs[0]).data();
        for (std::size_t i = 0; i < g.size(); ++i) ga[i] += g[i] * (1.0 - y[i] * y[i]);
        break;
      }
      case Op::kRelu: {
        if (skip(0)) break;
        const Tensor& a = val(0);
        auto ga = touch(node.inputs[0]).data();
        for (std::size_t i = 0; i < g.size(); ++i) {
          if (a[i] > 0.0) ga[i] += g[i];
        }
        break;
      }
      case Op::kSoftmax: {
        if (skip(0)) break;
        double dot = 0.0;
        for (std::size_t i = 0; i < g.size(); ++i) dot += g[i] * y[i];
        auto ga = touch(node.inputs[0]).data();
        for (std::size_t i = 0; i < g.size(); ++i) ga[i] += y[i] * (g[i] - dot);
        break;
      }
      case Op::kLog: {
        if (skip(0)) break;
        const Tensor& a = val(0);
        auto ga = touch(node.inputs[0]).data();
        for (std::size_t i = 0; i < g.size(); ++i) ga[i] += g[i] / a[i];
        break;
      }
      case Op::kSum: {
        if (skip(0)) break;
        auto ga = touch(node.inputs[0]).data();
        for (double& v : ga) v += g[0];
        break;
      }
      case Op::kScale: {
        if (skip(0)) break;
        auto ga = touch(node.inputs[0]).data();
        for (std::size_t i = 0; i < g.size(); ++i) ga[i] += node.factor * g[i];
        break;
      }
      case Op::kReshape: {
        if (skip(0)) break;
        auto ga = touch(node.inputs[0]).data();
        for (std::size_t i = 0; i < g.size(); ++i) ga[i] += g[i];
        break;
      }
      case Op::kInput:
      case Op::kConstant:
        break;
    }
  }

  Gradients out;
  for (std::size_t idx = 0; idx < nodes.size(); ++idx) {
    const Node& node = nodes[idx];
    if (node.op != Op::kInput) continue;
    if (live[idx]) {
      if (!grad[idx].all_finite()) {
        throw NumericalError("backward: non-finite gradient for input '" + node.name + "'");
      }
      out.set(node.name, std::move(grad[idx]));
    } else {
      out.set(node.name, Tensor(node.shape));
    }
  }
  return out;
}

}  // namespace stackrl::autodiff
