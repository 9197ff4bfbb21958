#include "stackrl/predictor/model.h"

#include <charconv>
#include <cmath>
#include <set>

#include "stackrl/chem/tokenizer.h"
#include "stackrl/errors.h"
#include "stackrl/io/text.h"

namespace stackrl::predictor {

using autodiff::Graph;
using autodiff::NamedTensors;
using autodiff::NodeId;
using autodiff::Shape;
using autodiff::Tensor;

namespace {

std::string lstm(char block, char gate) { return std::string("lstm.") + block + '_' + gate; }

constexpr char kGates[4] = {'i', 'f', 'g', 'o'};

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

}  // namespace

void PredictorConfig::validate() const {
  if (embedding_dim == 0 || hidden_size == 0 || dense_size == 0) {
    throw DataError("predictor: layer sizes must be positive");
  }
  if (vocab_size <= chem::kEnd) throw DataError("predictor: empty vocabulary");
  if (!std::isfinite(target_scale) || !std::isfinite(target_offset) || target_scale == 0.0) {
    throw DataError("predictor: bad target normalization");
  }
}

std::vector<std::pair<std::string, std::string>> PredictorConfig::to_entries() const {
  return {
      {"embedding_dim", std::to_string(embedding_dim)},
      {"hidden_size", std::to_string(hidden_size)},
      {"dense_size", std::to_string(dense_size)},
      {"vocab_size", std::to_string(vocab_size)},
      {"target_scale", io::format_double(target_scale)},
      {"target_offset", io::format_double(target_offset)},
  };
}

PredictorConfig PredictorConfig::from_entries(const std::vector<std::pair<std::string, std::string>>& entries) {
  PredictorConfig cfg;
  for (const auto& [key, value] : entries) {
    std::size_t* field = nullptr;
    if (key == "embedding_dim") field = &cfg.embedding_dim;
    else if (key == "hidden_size") field = &cfg.hidden_size;
    else if (key == "dense_size") field = &cfg.dense_size;
    else if (key == "vocab_size") field = &cfg.vocab_size;
    else if (key == "target_scale") cfg.target_scale = io::parse_double(value, key);
    else if (key == "target_offset") cfg.target_offset = io::parse_double(value, key);
    if (field == nullptr) continue;
    const auto res = std::from_chars(value.data(), value.data() + value.size(), *field);
    if (res.ec != std::errc{} || res.ptr != value.data() + value.size()) {
      throw DataError("predictor config: bad value '" + value + "' for " + key);
    }
  }
  return cfg;
}

std::vector<std::pair<std::string, Shape>> PredictorModel::parameter_shapes(const PredictorConfig& c) {
  std::vector<std::pair<std::string, Shape>> shapes;
  shapes.emplace_back("embedding", Shape{c.vocab_size, c.embedding_dim});
  for (char gate : kGates) {
    shapes.emplace_back(lstm('W', gate), Shape{c.hidden_size, c.embedding_dim});
    shapes.emplace_back(lstm('U', gate), Shape{c.hidden_size, c.hidden_size});
    shapes.emplace_back(lstm('b', gate), Shape{c.hidden_size});
  }
  shapes.emplace_back("dense1.W", Shape{c.dense_size, c.hidden_size});
  shapes.emplace_back("dense1.b", Shape{c.dense_size});
  shapes.emplace_back("dense2.W", Shape{1, c.dense_size});
  shapes.emplace_back("dense2.b", Shape{1});
  return shapes;
}

PredictorModel::PredictorModel(const PredictorConfig& config, chem::Vocabulary vocab, Rng& rng)
    : config_(config), vocab_(std::move(vocab)) {
  config_.validate();
  if (vocab_.size() != config_.vocab_size) throw DataError("predictor: vocab_size mismatch");
  for (auto& [name, shape] : parameter_shapes(config_)) {
    Tensor t(shape);
    if (shape.size() == 2) {
      const double bound = name == "embedding" ? 0.1 : 1.0 / std::sqrt(static_cast<double>(shape[1]));
      for (double& v : t.data()) v = uniform(rng, -bound, bound);
    } else if (name == lstm('b', 'f')) {
      t.fill(1.0);
    }
    params_.set(name, std::move(t));
  }
}

PredictorModel PredictorModel::zeros(const PredictorConfig& config, chem::Vocabulary vocab) {
  NamedTensors params;
  for (auto& [name, shape] : parameter_shapes(config)) params.set(name, Tensor(shape));
  return PredictorModel(config, std::move(vocab), std::move(params));
}

PredictorModel::PredictorModel(const PredictorConfig& config, chem::Vocabulary vocab, NamedTensors params)
    : config_(config), vocab_(std::move(vocab)), params_(std::move(params)) {
  config_.validate();
  if (vocab_.size() != config_.vocab_size) throw DataError("predictor: vocab_size mismatch");
  const auto shapes = parameter_shapes(config_);
  for (const auto& [name, shape] : shapes) {
    const Tensor* t = params_.find(name);
    if (t == nullptr) throw DataError("predictor: missing parameter '" + name + "'");
    if (t->shape() != shape) throw DataError("predictor: parameter '" + name + "' has the wrong shape");
  }
  if (params_.size() != shapes.size()) throw DataError("predictor: unexpected extra parameters");
}

std::vector<chem::TokenId> predictor_input(const PredictorModel& model, std::string_view text) {
  std::vector<chem::TokenId> ids{chem::kStart};
  if (text.empty()) return ids;
  const auto r = chem::tokenize(text, model.vocabulary());
  if (!r.unknown.empty()) {
    throw DataError("predictor: '" + std::string(text) + "' has character '" +
                    std::string(1, r.unknown.front().character) + "' outside the vocabulary");
  }
  ids.insert(ids.end(), r.ids.begin(), r.ids.end());
  return ids;
}

double predict_ids(const PredictorModel& model, const std::vector<chem::TokenId>& ids) {
  const PredictorConfig& c = model.config();
  const auto& p = model.parameters();
  const std::size_t H = c.hidden_size;
  std::vector<double> h(H, 0.0), cell(H, 0.0), tmp(H);
  std::array<std::vector<double>, 4> gate;
  for (auto& v : gate) v.resize(H);
  for (chem::TokenId id : ids) {
    if (id >= c.vocab_size) throw DataError("predictor: token id out of range");
    const double* x = p.at("embedding").data().data() + static_cast<std::size_t>(id) * c.embedding_dim;
    for (std::size_t k = 0; k < 4; ++k) {
      matvec(p.at(lstm('W', kGates[k])), x, gate[k].data());
      matvec(p.at(lstm('U', kGates[k])), h.data(), tmp.data());
      const Tensor& b = p.at(lstm('b', kGates[k]));
      for (std::size_t i = 0; i < H; ++i) {
        const double pre = gate[k][i] + tmp[i] + b[i];
        gate[k][i] = kGates[k] == 'g' ? std::tanh(pre) : sigmoid(pre);
      }
    }
    for (std::size_t i = 0; i < H; ++i) {
      cell[i] = gate[1][i] * cell[i] + gate[0][i] * gate[2][i];
      h[i] = gate[3][i] * std::tanh(cell[i]);
    }
  }
  std::vector<double> d1(c.dense_size);
  matvec(p.at("dense1.W"), h.data(), d1.data());
  const Tensor& b1 = p.at("dense1.b");
  for (std::size_t i = 0; i < d1.size(); ++i) {
    const double v = d1[i] + b1[i];
    d1[i] = v > 0.0 ? v : 0.0;
  }
  double out = 0.0;
  matvec(p.at("dense2.W"), d1.data(), &out);
  out = out + p.at("dense2.b")[0];
  return c.target_scale * out + c.target_offset;
}

double predict(const PredictorModel& model, std::string_view text) {
  return predict_ids(model, predictor_input(model, text));
}

NodeId build_network(Graph& g, const PredictorConfig& c, const std::vector<chem::TokenId>& ids) {
  if (ids.empty()) throw DataError("predictor: empty input");
  const auto shapes = PredictorModel::parameter_shapes(c);
  auto in = [&](const std::string& name) {
    for (const auto& [pname, shape] : shapes) {
      if (pname == name) return g.input(name, shape);
    }
    throw DataError("predictor: unknown parameter " + name);
  };
  const NodeId emb = in("embedding");
  std::array<NodeId, 4> W, U, b;
  for (std::size_t k = 0; k < 4; ++k) {
    W[k] = in(lstm('W', kGates[k]));
    U[k] = in(lstm('U', kGates[k]));
    b[k] = in(lstm('b', kGates[k]));
  }
  NodeId h = g.constant(Tensor({c.hidden_size}));
  NodeId cell = h;
  for (chem::TokenId id : ids) {
    const NodeId x = g.reshape(g.row_select(emb, {id}), {c.embedding_dim});
    std::array<NodeId, 4> gate;
    for (std::size_t k = 0; k < 4; ++k) {
      const NodeId pre = g.add(g.add(g.matmul(W[k], x), g.matmul(U[k], h)), b[k]);
      gate[k] = kGates[k] == 'g' ? g.tanh(pre) : g.sigmoid(pre);
    }
    cell = g.add(g.hadamard(gate[1], cell), g.hadamard(gate[0], gate[2]));
    h = g.hadamard(gate[3], g.tanh(cell));
  }
  const NodeId d1 = g.relu(g.add(g.matmul(in("dense1.W"), h), in("dense1.b")));
  return g.add(g.matmul(in("dense2.W"), d1), in("dense2.b"));
}

chem::Vocabulary predictor_vocabulary(const std::vector<std::string>& texts, const chem::Vocabulary* extra) {
  std::set<std::string> tokens;
  auto add_with_chars = [&](const std::string& t) {
    tokens.insert(t);
    for (char ch : t) tokens.insert(std::string(1, ch));
  };
  const auto base = chem::build_vocabulary(texts, chem::TokenMode::kSmiles);
  for (const auto& t : base.tokens()) {
    if (t.front() != '<') add_with_chars(t);
  }
  if (extra != nullptr) {
    for (std::size_t id = chem::kEnd + 1; id < extra->size(); ++id) add_with_chars(extra->token(static_cast<chem::TokenId>(id)));
  }
  return chem::Vocabulary(std::vector<std::string>(tokens.begin(), tokens.end()));
}

io::Container to_container(const PredictorModel& model) {
  io::Container c;
  c.magic = kPredictorMagic;
  c.version = io::kContainerVersion;
  c.config = model.config().to_entries();
  c.vocabulary = model.vocabulary().tokens();
  for (const auto& [name, tensor] : model.parameters().entries()) c.tensors.emplace_back(name, tensor);
  return c;
}

PredictorModel predictor_from_container(const io::Container& c) {
  const auto cfg = PredictorConfig::from_entries(c.config);
  chem::Vocabulary vocab;
  try {
    vocab = chem::Vocabulary::from_full_list(c.vocabulary);
  } catch (const DataError& e) {
    throw DataError(std::string("checkpoint section vocabulary: ") + e.what());
  }
  NamedTensors params;
  for (const auto& [name, tensor] : c.tensors) params.set(name, tensor);
  try {
    return PredictorModel(cfg, std::move(vocab), std::move(params));
  } catch (const DataError& e) {
    throw DataError(std::string("checkpoint section tensors: ") + e.what());
  }
}

void save_predictor(const std::filesystem::path& path, const PredictorModel& model) {
  if (!model.parameters().all_finite()) {
    throw NumericalError("refusing to write checkpoint with non-finite parameters: " + path.string());
  }
  io::write_container(path, to_container(model));
}

PredictorModel load_predictor(const std::filesystem::path& path) {
  return predictor_from_container(io::read_container(path, kPredictorMagic));
}

}  // namespace stackrl::predictor
