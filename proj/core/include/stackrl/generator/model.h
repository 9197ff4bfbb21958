#ifndef STACKRL_GENERATOR_MODEL_H_
#define STACKRL_GENERATOR_MODEL_H_

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "stackrl/autodiff/tensor.h"
#include "stackrl/chem/vocabulary.h"
#include "stackrl/random.h"

namespace stackrl::generator {

struct GeneratorConfig {
  std::size_t hidden_size = 128;      // m
  std::size_t stack_width = 16;       // w; 0 removes the stack entirely
  std::size_t stack_depth = 32;       // k_max
  std::size_t stack_read_depth = 1;   // k
  std::size_t embedding_dim = 32;
  std::size_t vocab_size = 0;         // including reserved tokens
  std::size_t max_len = 80;           // T, generated tokens before truncation

  bool has_stack() const { return stack_width > 0; }
  std::size_t stack_read_size() const { return has_stack() ? stack_read_depth * stack_width : 0; }
  std::size_t output_size() const { return vocab_size - chem::kEnd; }

  // Throws DataError.
  void validate() const;

  std::vector<std::pair<std::string, std::string>> to_entries() const;
  // Missing keys keep their defaults; throws DataError on malformed values.
  static GeneratorConfig from_entries(const std::vector<std::pair<std::string, std::string>>& entries);

  // Same config without the stack (the memory ablation).
  GeneratorConfig without_stack() const;

  bool operator==(const GeneratorConfig&) const = default;
};

// Parameter names.
namespace param {
inline constexpr const char* kEmbedding = "embedding";
inline constexpr const char* kControlW = "stack.control.W";
inline constexpr const char* kControlB = "stack.control.b";
inline constexpr const char* kPushW = "stack.push.W";
inline constexpr const char* kOutputW = "output.W";
inline constexpr const char* kOutputB = "output.b";
// Gate g in {z, r, n}; block in {W (input), U (recurrent), D (stack read), b}.
std::string gru(char gate, char block);
}  // namespace param

// Stack-augmented GRU language model over a token vocabulary.
//
//   x   = embedding[token]
//   s   = top k rows of the previous stack, flattened
//   z   = sigmoid(W_z x + U_z h + D_z s + b_z)
//   r   = sigmoid(W_r x + U_r h + D_r s + b_r)
//   n   = tanh(W_n x + U_n (r * h) + D_n s + b_n)
//   h'  = n + z * (h - n)
//   a   = softmax(C h' + c)            (PUSH, POP, NO-OP)
//   top = sigmoid(P h')
//   S'  = a0 [top; S[0..K-2]] + a1 [S[1..K-1]; 0] + a2 S
//   p   = softmax(O h' + o)            over END and ordinary tokens
class GeneratorModel {
 public:
  GeneratorModel() = default;
  // Parameters drawn uniformly from +-1/sqrt(fan_in); biases zero.
  GeneratorModel(const GeneratorConfig& config, chem::Vocabulary vocab, Rng& rng);
  // All parameters zero.
  static GeneratorModel zeros(const GeneratorConfig& config, chem::Vocabulary vocab);
  // Takes ownership of explicit parameters; throws DataError on a missing or
  // misshapen tensor.
  GeneratorModel(const GeneratorConfig& config, chem::Vocabulary vocab, autodiff::NamedTensors params);

  const GeneratorConfig& config() const { return config_; }
  const chem::Vocabulary& vocabulary() const { return vocab_; }
  const autodiff::NamedTensors& parameters() const { return params_; }
  autodiff::NamedTensors& parameters() { return params_; }

  // Expected name -> shape table for the config.
  static std::vector<std::pair<std::string, autodiff::Shape>> parameter_shapes(const GeneratorConfig& config);

 private:
  GeneratorConfig config_;
  chem::Vocabulary vocab_;
  autodiff::NamedTensors params_;
};

}  // namespace stackrl::generator

#endif  // STACKRL_GENERATOR_MODEL_H_
