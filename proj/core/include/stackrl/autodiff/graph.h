#ifndef STACKRL_AUTODIFF_GRAPH_H_
#define STACKRL_AUTODIFF_GRAPH_H_

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "stackrl/autodiff/tensor.h"

namespace stackrl::autodiff {

// The closed set of primitives every model in the library is composed of.
enum class Op : std::uint8_t {
  kInput,      // named leaf bound at forward()
  kConstant,   // literal leaf, never differentiated
  kMatMul,     // [m,n]x[n] -> [m] or [m,n]x[n,p] -> [m,p]
  kAdd,        // same shapes
  kHadamard,   // same shapes, or either side a single element
  kConcat,     // rank-1: append; rank-2: stack rows
  kRowSelect,  // rank-1: gather elements; rank-2: gather rows
  kSigmoid,
  kTanh,
  kRelu,
  kSoftmax,    // rank-1
  kLog,
  kSum,        // all elements -> {1}
  kScale,      // multiply by a constant factor
  kReshape,
};

std::string_view op_name(Op op);

struct NodeId {
  std::uint32_t index = 0;
  bool operator==(const NodeId&) const = default;
};

struct Node {
  Op op = Op::kConstant;
  Shape shape;
  std::vector<NodeId> inputs;
  std::string name;                   // kInput
  Tensor value;                       // kConstant
  std::vector<std::size_t> indices;   // kRowSelect
  double factor = 1.0;                // kScale
};

// Builder for a topologically ordered expression DAG. Shapes are inferred and
// checked as nodes are added; a mismatch throws ShapeError naming the node.
// Input leaves are deduplicated by name.
class Graph {
 public:
  NodeId input(std::string name, Shape shape);
  NodeId constant(Tensor value);

  NodeId matmul(NodeId a, NodeId b);
  NodeId add(NodeId a, NodeId b);
  NodeId hadamard(NodeId a, NodeId b);
  NodeId concat(const std::vector<NodeId>& parts);
  NodeId row_select(NodeId a, std::vector<std::size_t> indices);
  NodeId sigmoid(NodeId a);
  NodeId tanh(NodeId a);
  NodeId relu(NodeId a);
  NodeId softmax(NodeId a);
  NodeId log(NodeId a);
  NodeId sum(NodeId a);
  NodeId scale(NodeId a, double factor);
  NodeId reshape(NodeId a, Shape shape);

  // a - b, expressed with add and scale.
  NodeId sub(NodeId a, NodeId b);

  const Node& node(NodeId id) const { return nodes_[id.index]; }
  const Shape& shape(NodeId id) const { return nodes_[id.index].shape; }
  std::size_t size() const { return nodes_.size(); }
  const std::vector<Node>& nodes() const { return nodes_; }

 private:
  NodeId push(Node node);
  void check(NodeId id) const;
  [[noreturn]] void fail(Op op, const std::string& what) const;

  std::vector<Node> nodes_;
  std::map<std::string, NodeId, std::less<>> input_ids_;
};

// Node values from one forward evaluation. Input leaves alias the bound
// tensors, so the bindings must outlive the Values.
class Values {
 public:
  const Tensor& operator[](NodeId id) const { return *view_[id.index]; }
  double scalar(NodeId id) const { return (*this)[id][0]; }
  std::size_t size() const { return view_.size(); }

 private:
  friend Values forward(const Graph&, const NamedTensors&);
  std::vector<Tensor> owned_;
  std::vector<const Tensor*> view_;
};

// Evaluates every node in order. Throws ShapeError when an input is unbound
// or bound with the wrong shape, NumericalError when an op yields NaN/Inf.
Values forward(const Graph& graph, const NamedTensors& inputs);

// Reverse sweep from a single-element seed node. Returns one gradient per
// input leaf in the graph; leaves the seed does not reach get zeros.
Gradients backward(const Graph& graph, const Values& values, NodeId seed);

}  // namespace stackrl::autodiff

#endif  // STACKRL_AUTODIFF_GRAPH_H_
