#ifndef STACKRL_GENERATOR_CELL_H_
#define STACKRL_GENERATOR_CELL_H_

#include <array>
#include <optional>
#include <span>
#include <vector>

#include "stackrl/autodiff/graph.h"
#include "stackrl/generator/model.h"

namespace stackrl::generator {

struct CellState {
  std::vector<double> hidden;  // m
  autodiff::Tensor stack;      // k_max x w, row 0 is the top; empty without a stack

  bool operator==(const CellState&) const = default;
};

// Control weights in PUSH, POP, NO-OP order.
using StackControl = std::array<double, 3>;
inline constexpr std::size_t kPush = 0;
inline constexpr std::size_t kPop = 1;
inline constexpr std::size_t kNoOp = 2;

struct StepResult {
  std::vector<double> probs;  // over the full vocabulary; PAD and START get 0
  CellState state;
  StackControl control{};     // as applied (zero without a stack)
};

CellState init_state(const GeneratorConfig& config);

// Blends the PUSH (new top, rows shift down), POP (rows shift up, zero at the
// bottom) and NO-OP (unchanged) stacks by `control`.
autodiff::Tensor update_stack(const autodiff::Tensor& stack, const StackControl& control,
                              std::span<const double> pushed);

// One recurrent step consuming `token`. `forced_control` replaces the control
// softmax (used to probe the stack update). Throws DataError if the token id
// is out of range.
StepResult cell_step(const GeneratorModel& model, const CellState& state, chem::TokenId token,
                     const std::optional<StackControl>& forced_control = std::nullopt);

// Throws DataError unless seq starts with START, contains no reserved token in
// the middle, and either ends with END or holds exactly max_len generated
// tokens (a truncated sample).
void check_sequence(const GeneratorConfig& config, const chem::TokenSequence& seq);

// Sum of log p(next | prefix) over the sequence. When `hidden_trace` is set it
// receives the hidden state after each consumed input token.
double sequence_log_prob(const GeneratorModel& model, const chem::TokenSequence& seq,
                         std::vector<std::vector<double>>* hidden_trace = nullptr);

// Adds nodes computing log p(seq) to `graph`; parameters are input leaves
// under their parameter names. Returns the scalar log-prob node.
autodiff::NodeId build_log_prob(autodiff::Graph& graph, const GeneratorConfig& config,
                                const chem::TokenSequence& seq);

// Value of coefficient * log p(seq) and its gradient with respect to every
// parameter, by reverse-mode differentiation.
struct ScaledLogProb {
  double log_prob = 0.0;
  autodiff::Gradients gradient;
};
ScaledLogProb log_prob_gradient(const GeneratorModel& model, const chem::TokenSequence& seq,
                                double coefficient);

// Value of hidden unit `unit` after each non-reserved token of seq.
// Throws DataError for a bad unit.
std::vector<double> trace_activations(const GeneratorModel& model, const chem::TokenSequence& seq,
                                      std::size_t unit);

}  // namespace stackrl::generator

#endif  // STACKRL_GENERATOR_CELL_H_
