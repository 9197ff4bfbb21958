#include "stackrl/generator/cell.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "stackrl/errors.h"

namespace stackrl::generator {

using autodiff::Graph;
using autodiff::NodeId;
using autodiff::Tensor;
using chem::TokenId;
using chem::TokenSequence;

namespace {

// y = A x, summed in column order (matches the graph kernel).
void matvec(const Tensor& a, const double* x, double* y) {
  const std::size_t rows = a.rows();
  const std::size_t cols = a.cols();
  const double* p = a.data().data();
  for (std::size_t i = 0; i < rows; ++i) {
    const double* row = p + i * cols;
    double acc = 0.0;
    for (std::size_t k = 0; k < cols; ++k) acc += row[k] * x[k];
    y[i] = acc;
  }
}

double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

void softmax_in_place(std::vector<double>& v) {
  const double mx = *std::max_element(v.begin(), v.end());
  double total = 0.0;
  for (double& x : v) {
    x = std::exp(x - mx);
    total += x;
  }
  for (double& x : v) x /= total;
}

void check_token(const GeneratorConfig& cfg, TokenId token) {
  if (token >= cfg.vocab_size) {
    throw DataError("generator: token id " + std::to_string(token) + " outside vocabulary of " +
                    std::to_string(cfg.vocab_size));
  }
}

// Pre-activation W x + U h (+ D s) + b for one gate.
std::vector<double> gate_input(const GeneratorModel& model, char gate, const double* x, const double* h,
                               const double* read) {
  const auto& p = model.parameters();
  const std::size_t m = model.config().hidden_size;
  std::vector<double> out(m), tmp(m);
  matvec(p.at(param::gru(gate, 'W')), x, out.data());
  matvec(p.at(param::gru(gate, 'U')), h, tmp.data());
  for (std::size_t i = 0; i < m; ++i) out[i] = out[i] + tmp[i];
  if (read != nullptr) {
    matvec(p.at(param::gru(gate, 'D')), read, tmp.data());
    for (std::size_t i = 0; i < m; ++i) out[i] = out[i] + tmp[i];
  }
  const Tensor& b = p.at(param::gru(gate, 'b'));
  for (std::size_t i = 0; i < m; ++i) out[i] = out[i] + b[i];
  return out;
}

}  // namespace

CellState init_state(const GeneratorConfig& config) {
  CellState s;
  s.hidden.assign(config.hidden_size, 0.0);
  if (config.has_stack()) s.stack = Tensor({config.stack_depth, config.stack_width});
  return s;
}

Tensor update_stack(const Tensor& stack, const StackControl& a, std::span<const double> pushed) {
  const std::size_t depth = stack.rows();
  const std::size_t width = stack.cols();
  Tensor out(stack.shape());
  for (std::size_t i = 0; i < depth; ++i) {
    for (std::size_t j = 0; j < width; ++j) {
      const double push_v = i == 0 ? pushed[j] : stack.at(i - 1, j);
      const double pop_v = i + 1 < depth ? stack.at(i + 1, j) : 0.0;
      out.at(i, j) = a[kPush] * push_v + a[kPop] * pop_v + a[kNoOp] * stack.at(i, j);
    }
  }
  return out;
}

StepResult cell_step(const GeneratorModel& model, const CellState& state, TokenId token,
                     const std::optional<StackControl>& forced_control) {
  const GeneratorConfig& cfg = model.config();
  check_token(cfg, token);
  const auto& p = model.parameters();
  const std::size_t m = cfg.hidden_size;
  const std::size_t e = cfg.embedding_dim;
  const double* x = p.at(param::kEmbedding).data().data() + static_cast<std::size_t>(token) * e;
  const double* h = state.hidden.data();
  const double* read = cfg.has_stack() ? state.stack.data().data() : nullptr;

  std::vector<double> z = gate_input(model, 'z', x, h, read);
  std::vector<double> r = gate_input(model, 'r', x, h, read);
  for (double& v : z) v = sigmoid(v);
  for (double& v : r) v = sigmoid(v);

  std::vector<double> rh(m), n(m), tmp(m);
  for (std::size_t i = 0; i < m; ++i) rh[i] = r[i] * h[i];
  matvec(p.at(param::gru('n', 'W')), x, n.data());
  matvec(p.at(param::gru('n', 'U')), rh.data(), tmp.data());
  for (std::size_t i = 0; i < m; ++i) n[i] = n[i] + tmp[i];
  if (read != nullptr) {
    matvec(p.at(param::gru('n', 'D')), read, tmp.data());
    for (std::size_t i = 0; i < m; ++i) n[i] = n[i] + tmp[i];
  }
  const Tensor& bn = p.at(param::gru('n', 'b'));
  for (std::size_t i = 0; i < m; ++i) n[i] = std::tanh(n[i] + bn[i]);

  StepResult result;
  result.state.hidden.resize(m);
  for (std::size_t i = 0; i < m; ++i) result.state.hidden[i] = n[i] + z[i] * (h[i] - n[i]);
  const double* h_new = result.state.hidden.data();

  if (cfg.has_stack()) {
    if (forced_control) {
      result.control = *forced_control;
    } else {
      std::vector<double> logits(3);
      matvec(p.at(param::kControlW), h_new, logits.data());
      const Tensor& cb = p.at(param::kControlB);
      for (std::size_t i = 0; i < 3; ++i) logits[i] = logits[i] + cb[i];
      softmax_in_place(logits);
      std::copy(logits.begin(), logits.end(), result.control.begin());
    }
    std::vector<double> pushed(cfg.stack_width);
    matvec(p.at(param::kPushW), h_new, pushed.data());
    for (double& v : pushed) v = sigmoid(v);
    result.state.stack = update_stack(state.stack, result.control, pushed);
  }

  std::vector<double> logits(cfg.output_size());
  matvec(p.at(param::kOutputW), h_new, logits.data());
  const Tensor& ob = p.at(param::kOutputB);
  for (std::size_t i = 0; i < logits.size(); ++i) logits[i] = logits[i] + ob[i];
  softmax_in_place(logits);
  result.probs.assign(cfg.vocab_size, 0.0);
  std::copy(logits.begin(), logits.end(), result.probs.begin() + chem::kEnd);
  return result;
}

void check_sequence(const GeneratorConfig& config, const TokenSequence& seq) {
  const auto& ids = seq.ids;
  if (ids.size() < 2 || ids.front() != chem::kStart) {
    throw DataError("generator: sequence must start with START and hold at least one token");
  }
  for (std::size_t i = 1; i < ids.size(); ++i) {
    check_token(config, ids[i]);
    if (ids[i] == chem::kStart || ids[i] == chem::kPad) {
      throw DataError("generator: reserved token at position " + std::to_string(i));
    }
    if (ids[i] == chem::kEnd && i + 1 != ids.size()) {
      throw DataError("generator: tokens after END at position " + std::to_string(i + 1));
    }
  }
  const std::size_t generated = ids.size() - 1;
  if (seq.terminal()) {
    if (generated > config.max_len) {
      throw DataError("generator: sequence of " + std::to_string(generated) + " tokens exceeds max_len " +
                      std::to_string(config.max_len));
    }
  } else if (generated != config.max_len) {
    throw DataError("generator: sequence does not end with END and is not a truncated sample");
  }
}

double sequence_log_prob(const GeneratorModel& model, const TokenSequence& seq,
                         std::vector<std::vector<double>>* hidden_trace) {
  check_sequence(model.config(), seq);
  if (hidden_trace != nullptr) hidden_trace->clear();
  CellState state = init_state(model.config());
  double total = 0.0;
  for (std::size_t t = 0; t + 1 < seq.ids.size(); ++t) {
    StepResult step = cell_step(model, state, seq.ids[t]);
    total += std::log(step.probs[seq.ids[t + 1]]);
    state = std::move(step.state);
    if (hidden_trace != nullptr) hidden_trace->push_back(state.hidden);
  }
  return total;
}

NodeId build_log_prob(Graph& g, const GeneratorConfig& cfg, const TokenSequence& seq) {
  check_sequence(cfg, seq);
  const std::size_t m = cfg.hidden_size;
  const std::size_t e = cfg.embedding_dim;
  const std::size_t depth = cfg.stack_depth;
  const std::size_t width = cfg.stack_width;
  const bool stack = cfg.has_stack();

  auto in = [&](const std::string& name) {
    for (const auto& [pname, shape] : GeneratorModel::parameter_shapes(cfg)) {
      if (pname == name) return g.input(name, shape);
    }
    throw DataError("generator: unknown parameter " + name);
  };
  const NodeId emb = in(param::kEmbedding);
  struct Gate {
    NodeId W, U, D, b;
  };
  std::array<Gate, 3> gates;
  const char names[3] = {'z', 'r', 'n'};
  for (std::size_t k = 0; k < 3; ++k) {
    gates[k].W = in(param::gru(names[k], 'W'));
    gates[k].U = in(param::gru(names[k], 'U'));
    if (stack) gates[k].D = in(param::gru(names[k], 'D'));
    gates[k].b = in(param::gru(names[k], 'b'));
  }
  NodeId ctrl_w{}, ctrl_b{}, push_w{}, zero_row{};
  if (stack) {
    ctrl_w = in(param::kControlW);
    ctrl_b = in(param::kControlB);
    push_w = in(param::kPushW);
    zero_row = g.constant(Tensor({1, width}));
  }
  const NodeId out_w = in(param::kOutputW);
  const NodeId out_b = in(param::kOutputB);

  std::vector<std::size_t> read_rows(cfg.stack_read_depth), upper_rows, lower_rows;
  std::iota(read_rows.begin(), read_rows.end(), 0);
  for (std::size_t i = 0; i + 1 < depth; ++i) {
    upper_rows.push_back(i);
    lower_rows.push_back(i + 1);
  }

  NodeId h = g.constant(Tensor({m}));
  NodeId s_mat{};
  if (stack) s_mat = g.constant(Tensor({depth, width}));
  std::vector<NodeId> logs;
  for (std::size_t t = 0; t + 1 < seq.ids.size(); ++t) {
    const NodeId x = g.reshape(g.row_select(emb, {seq.ids[t]}), {e});
    NodeId read{};
    if (stack) read = g.reshape(g.row_select(s_mat, read_rows), {cfg.stack_read_size()});
    auto pre = [&](const Gate& gate, NodeId hidden_in) {
      NodeId v = g.add(g.matmul(gate.W, x), g.matmul(gate.U, hidden_in));
      if (stack) v = g.add(v, g.matmul(gate.D, read));
      return g.add(v, gate.b);
    };
    const NodeId z = g.sigmoid(pre(gates[0], h));
    const NodeId r = g.sigmoid(pre(gates[1], h));
    const NodeId n = g.tanh(pre(gates[2], g.hadamard(r, h)));
    h = g.add(n, g.hadamard(z, g.sub(h, n)));

    if (stack) {
      const NodeId a = g.softmax(g.add(g.matmul(ctrl_w, h), ctrl_b));
      const NodeId top = g.reshape(g.sigmoid(g.matmul(push_w, h)), {1, width});
      const NodeId pushed = depth > 1 ? g.concat({top, g.row_select(s_mat, upper_rows)}) : top;
      const NodeId popped = depth > 1 ? g.concat({g.row_select(s_mat, lower_rows), zero_row}) : zero_row;
      s_mat = g.add(g.add(g.hadamard(pushed, g.row_select(a, {kPush})),
                          g.hadamard(popped, g.row_select(a, {kPop}))),
                    g.hadamard(s_mat, g.row_select(a, {kNoOp})));
    }

    const NodeId probs = g.softmax(g.add(g.matmul(out_w, h), out_b));
    const std::size_t target = chem::Vocabulary::to_output_index(seq.ids[t + 1]);
    logs.push_back(g.log(g.row_select(probs, {target})));
  }
  return g.sum(g.concat(logs));
}

ScaledLogProb log_prob_gradient(const GeneratorModel& model, const TokenSequence& seq, double coefficient) {
  Graph g;
  const NodeId lp = build_log_prob(g, model.config(), seq);
  const NodeId seed = g.scale(lp, coefficient);
  const auto values = autodiff::forward(g, model.parameters());
  ScaledLogProb out;
  out.log_prob = values.scalar(lp);
  out.gradient = autodiff::backward(g, values, seed);
  return out;
}

std::vector<double> trace_activations(const GeneratorModel& model, const TokenSequence& seq, std::size_t unit) {
  if (unit >= model.config().hidden_size) {
    throw DataError("trace: unit " + std::to_string(unit) + " out of range for hidden size " +
                    std::to_string(model.config().hidden_size));
  }
  CellState state = init_state(model.config());
  std::vector<double> values;
  for (std::size_t t = 0; t < seq.ids.size(); ++t) {
    const TokenId id = seq.ids[t];
    const bool reserved = id == chem::kStart || id == chem::kEnd || id == chem::kPad;
    if (reserved && id != chem::kStart) continue;
    state = cell_step(model, state, id).state;
    if (!reserved) values.push_back(state.hidden[unit]);
  }
  return values;
}

}  // namespace stackrl::generator
