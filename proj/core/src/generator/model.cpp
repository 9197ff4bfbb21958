#include "stackrl/generator/model.h"

#include <charconv>
#include <cmath>

#include "stackrl/errors.h"

namespace stackrl::generator {

using autodiff::NamedTensors;
using autodiff::Shape;
using autodiff::Tensor;

namespace param {
std::string gru(char gate, char block) {
  std::string name = "gru.";
  name += block;
  name += '_';
  name += gate;
  return name;
}
}  // namespace param

void GeneratorConfig::validate() const {
  if (hidden_size == 0) throw DataError("generator: hidden_size must be positive");
  if (embedding_dim == 0) throw DataError("generator: embedding_dim must be positive");
  if (vocab_size <= chem::kEnd) throw DataError("generator: vocabulary has no emittable tokens");
  if (max_len < 2) throw DataError("generator: max_len must be at least 2");
  if (has_stack()) {
    if (stack_depth == 0 || stack_read_depth == 0) {
      throw DataError("generator: stack_depth and stack_read_depth must be positive");
    }
    if (stack_read_depth > stack_depth) {
      throw DataError("generator: stack_read_depth exceeds stack_depth");
    }
  }
}

std::vector<std::pair<std::string, std::string>> GeneratorConfig::to_entries() const {
  return {
      {"hidden_size", std::to_string(hidden_size)},
      {"stack_width", std::to_string(stack_width)},
      {"stack_depth", std::to_string(stack_depth)},
      {"stack_read_depth", std::to_string(stack_read_depth)},
      {"embedding_dim", std::to_string(embedding_dim)},
      {"vocab_size", std::to_string(vocab_size)},
      {"max_len", std::to_string(max_len)},
  };
}

GeneratorConfig GeneratorConfig::from_entries(const std::vector<std::pair<std::string, std::string>>& entries) {
  GeneratorConfig cfg;
  for (const auto& [key, value] : entries) {
    std::size_t* field = nullptr;
    if (key == "hidden_size") field = &cfg.hidden_size;
    else if (key == "stack_width") field = &cfg.stack_width;
    else if (key == "stack_depth") field = &cfg.stack_depth;
    else if (key == "stack_read_depth") field = &cfg.stack_read_depth;
    else if (key == "embedding_dim") field = &cfg.embedding_dim;
    else if (key == "vocab_size") field = &cfg.vocab_size;
    else if (key == "max_len") field = &cfg.max_len;
    if (field == nullptr) continue;
    const auto res = std::from_chars(value.data(), value.data() + value.size(), *field);
    if (res.ec != std::errc{} || res.ptr != value.data() + value.size()) {
      throw DataError("generator config: bad value '" + value + "' for " + key);
    }
  }
  return cfg;
}

GeneratorConfig GeneratorConfig::without_stack() const {
  GeneratorConfig cfg = *this;
  cfg.stack_width = 0;
  return cfg;
}

std::vector<std::pair<std::string, Shape>> GeneratorModel::parameter_shapes(const GeneratorConfig& c) {
  const std::size_t m = c.hidden_size;
  std::vector<std::pair<std::string, Shape>> shapes;
  shapes.emplace_back(param::kEmbedding, Shape{c.vocab_size, c.embedding_dim});
  for (char gate : {'z', 'r', 'n'}) {
    shapes.emplace_back(param::gru(gate, 'W'), Shape{m, c.embedding_dim});
    shapes.emplace_back(param::gru(gate, 'U'), Shape{m, m});
    if (c.has_stack()) shapes.emplace_back(param::gru(gate, 'D'), Shape{m, c.stack_read_size()});
    shapes.emplace_back(param::gru(gate, 'b'), Shape{m});
  }
  if (c.has_stack()) {
    shapes.emplace_back(param::kControlW, Shape{3, m});
    shapes.emplace_back(param::kControlB, Shape{3});
    shapes.emplace_back(param::kPushW, Shape{c.stack_width, m});
  }
  shapes.emplace_back(param::kOutputW, Shape{c.output_size(), m});
  shapes.emplace_back(param::kOutputB, Shape{c.output_size()});
  return shapes;
}

namespace {

void check_vocab(const GeneratorConfig& config, const chem::Vocabulary& vocab) {
  config.validate();
  if (vocab.size() != config.vocab_size) {
    throw DataError("generator: config vocab_size " + std::to_string(config.vocab_size) +
                    " does not match vocabulary of " + std::to_string(vocab.size()));
  }
}

}  // namespace

GeneratorModel::GeneratorModel(const GeneratorConfig& config, chem::Vocabulary vocab, Rng& rng)
    : config_(config), vocab_(std::move(vocab)) {
  check_vocab(config_, vocab_);
  for (auto& [name, shape] : parameter_shapes(config_)) {
    Tensor t(shape);
    const bool bias = shape.size() == 1;
    if (!bias) {
      const double fan_in = name == param::kEmbedding ? 1.0 : static_cast<double>(shape[1]);
      const double bound = name == param::kEmbedding ? 0.1 : 1.0 / std::sqrt(fan_in);
      for (double& v : t.data()) v = uniform(rng, -bound, bound);
    }
    params_.set(name, std::move(t));
  }
}

GeneratorModel GeneratorModel::zeros(const GeneratorConfig& config, chem::Vocabulary vocab) {
  NamedTensors params;
  for (auto& [name, shape] : parameter_shapes(config)) params.set(name, Tensor(shape));
  return GeneratorModel(config, std::move(vocab), std::move(params));
}

GeneratorModel::GeneratorModel(const GeneratorConfig& config, chem::Vocabulary vocab, NamedTensors params)
    : config_(config), vocab_(std::move(vocab)), params_(std::move(params)) {
  check_vocab(config_, vocab_);
  const auto shapes = parameter_shapes(config_);
  for (const auto& [name, shape] : shapes) {
    const Tensor* t = params_.find(name);
    if (t == nullptr) throw DataError("generator: missing parameter '" + name + "'");
    if (t->shape() != shape) {
      throw DataError("generator: parameter '" + name + "' has shape " + autodiff::shape_string(t->shape()) +
                      ", expected " + autodiff::shape_string(shape));
    }
  }
  if (params_.size() != shapes.size()) throw DataError("generator: unexpected extra parameters");
}

}  // namespace stackrl::generator
