#ifndef STACKRL_PREDICTOR_MODEL_H_
#define STACKRL_PREDICTOR_MODEL_H_

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "stackrl/autodiff/graph.h"
#include "stackrl/chem/vocabulary.h"
#include "stackrl/io/container.h"
#include "stackrl/random.h"

namespace stackrl::predictor {

struct PredictorConfig {
  std::size_t embedding_dim = 100;
  std::size_t hidden_size = 100;
  std::size_t dense_size = 100;
  std::size_t vocab_size = 0;
  // Output = target_scale * network + target_offset; training sets both from
  // the training targets so the network fits standardized values.
  double target_scale = 1.0;
  double target_offset = 0.0;

  void validate() const;  // throws DataError
  std::vector<std::pair<std::string, std::string>> to_entries() const;
  static PredictorConfig from_entries(const std::vector<std::pair<std::string, std::string>>& entries);
  bool operator==(const PredictorConfig&) const = default;
};

// Token embedding -> LSTM (last hidden state) -> dense relu -> dense scalar.
// Input is START followed by the string's tokens, so the empty string is
// still one step.
//
//   i = sigmoid(W_i x + U_i h + b_i)    f, o likewise
//   g = tanh(W_g x + U_g h + b_g)
//   c' = f * c + i * g,  h' = o * tanh(c')
class PredictorModel {
 public:
  PredictorModel() = default;
  PredictorModel(const PredictorConfig& config, chem::Vocabulary vocab, Rng& rng);
  static PredictorModel zeros(const PredictorConfig& config, chem::Vocabulary vocab);
  PredictorModel(const PredictorConfig& config, chem::Vocabulary vocab, autodiff::NamedTensors params);

  const PredictorConfig& config() const { return config_; }
  PredictorConfig& config() { return config_; }
  const chem::Vocabulary& vocabulary() const { return vocab_; }
  const autodiff::NamedTensors& parameters() const { return params_; }
  autodiff::NamedTensors& parameters() { return params_; }

  static std::vector<std::pair<std::string, autodiff::Shape>> parameter_shapes(const PredictorConfig& config);

 private:
  PredictorConfig config_;
  chem::Vocabulary vocab_;
  autodiff::NamedTensors params_;
};

// START + token ids. Throws DataError on characters outside the vocabulary.
std::vector<chem::TokenId> predictor_input(const PredictorModel& model, std::string_view text);

double predict(const PredictorModel& model, std::string_view text);
double predict_ids(const PredictorModel& model, const std::vector<chem::TokenId>& ids);

// Network output before de-standardization, as a graph node over parameter
// input leaves.
autodiff::NodeId build_network(autodiff::Graph& graph, const PredictorConfig& config,
                               const std::vector<chem::TokenId>& ids);

// Vocabulary covering the dataset strings plus every token (and every single
// character) of `extra`, so that strings from another model's vocabulary
// always tokenize.
chem::Vocabulary predictor_vocabulary(const std::vector<std::string>& texts,
                                      const chem::Vocabulary* extra = nullptr);

inline constexpr const char* kPredictorMagic = "PRED";
io::Container to_container(const PredictorModel& model);
PredictorModel predictor_from_container(const io::Container& container);
void save_predictor(const std::filesystem::path& path, const PredictorModel& model);
PredictorModel load_predictor(const std::filesystem::path& path);

}  // namespace stackrl::predictor

#endif  // STACKRL_PREDICTOR_MODEL_H_
