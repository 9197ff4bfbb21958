#include "run_config.h"

#include <json.hpp>

#include "stackrl/errors.h"

namespace stackrl::tools {

io::KeyValueConfig default_config() {
  io::KeyValueConfig c;
  c.set("seed", "0");
  c.set("out_dir", ".");
  c.set("corpus", "");
  c.set("vocab", "");
  c.set("checkpoint", "");
  c.set("train_corpus", "");
  c.set("dataset", "");
  c.set("samples", "");
  c.set("baseline_samples", "");

  c.set("filter.max_length", "100");
  c.set("ingest.mode", "smiles");

  const generator::GeneratorConfig g;
  c.set("generator.hidden_size", std::to_string(g.hidden_size));
  c.set("generator.stack_width", std::to_string(g.stack_width));
  c.set("generator.stack_depth", std::to_string(g.stack_depth));
  c.set("generator.stack_read_depth", std::to_string(g.stack_read_depth));
  c.set("generator.embedding_dim", std::to_string(g.embedding_dim));
  c.set("generator.max_len", std::to_string(g.max_len));

  c.set("train.epochs", "10");
  c.set("train.lr", "1");
  c.set("train.decay", "0.98");
  c.set("train.batch", "16");
  c.set("train.clip", "5");
  c.set("train.optimizer", "sgd");
  c.set("train.shuffle", "true");

  c.set("generate.n", "1000");
  c.set("generate.temperature", "1");

  c.set("report.threshold", "0.85");
  c.set("report.property", "none");
  c.set("report.bins", "40");

  const predictor::PredictorConfig p;
  c.set("predictor.embedding_dim", std::to_string(p.embedding_dim));
  c.set("predictor.hidden_size", std::to_string(p.hidden_size));
  c.set("predictor.dense_size", std::to_string(p.dense_size));
  const predictor::PredictorTrainOptions pt;
  c.set("predictor.epochs", std::to_string(pt.epochs));
  c.set("predictor.lr", io::format_double(pt.learning_rate));
  c.set("predictor.decay", io::format_double(pt.decay));
  c.set("predictor.batch", std::to_string(pt.batch_size));
  c.set("predictor.optimizer", "adam");
  c.set("predictor.folds", "5");

  c.set("finetune.iterations", "100");
  c.set("finetune.batch", "16");
  c.set("finetune.lr", "0.01");
  c.set("finetune.decay", "1");
  c.set("finetune.clip", "5");
  c.set("finetune.optimizer", "sgd");
  c.set("finetune.baseline", "true");
  c.set("finetune.baseline_decay", "0.9");
  c.set("finetune.checkpoint_every", "10");
  c.set("finetune.report_samples", "500");

  reinforce::RewardSpec().write(c);

  c.set("trace.unit", "0");
  c.set("trace.smiles", "");
  c.set("trace.color", "false");

  c.set("make_dataset.feature", "token_count");
  c.set("corpus.kind", "smiles");
  c.set("corpus.n", "5000");
  c.set("corpus.dyck_max_pairs", "12");
  c.set("corpus.dyck_max_depth", "8");
  return c;
}

void check_known_keys(const io::KeyValueConfig& config) {
  static const io::KeyValueConfig defaults = default_config();
  for (const auto& [key, value] : config.entries()) {
    if (!defaults.contains(key) && key != "reward.predictor") {
      throw DataError("unknown configuration key '" + key + "'");
    }
  }
}

std::filesystem::path require_path(const io::KeyValueConfig& config, std::string_view key) {
  const std::string v = config.get_string(key, "");
  if (v.empty()) throw DataError("missing required setting '" + std::string(key) + "'");
  if (!std::filesystem::exists(v)) throw DataError(std::string(key) + ": no such file '" + v + "'");
  return v;
}

std::filesystem::path output_dir(const io::KeyValueConfig& config) {
  std::filesystem::path dir = config.get_string("out_dir", ".");
  std::filesystem::create_directories(dir);
  return dir;
}

std::uint64_t seed_of(const io::KeyValueConfig& config) {
  const long s = config.get_int("seed", 0);
  if (s < 0) throw DataError("seed must be non-negative");
  return static_cast<std::uint64_t>(s);
}

namespace {

std::size_t positive(const io::KeyValueConfig& c, std::string_view key) {
  const long v = c.get_int(key, 0);
  if (v < 0) throw DataError(std::string(key) + " must be non-negative");
  return static_cast<std::size_t>(v);
}

}  // namespace

generator::GeneratorConfig generator_config(const io::KeyValueConfig& c) {
  generator::GeneratorConfig g;
  g.hidden_size = positive(c, "generator.hidden_size");
  g.stack_width = positive(c, "generator.stack_width");
  g.stack_depth = positive(c, "generator.stack_depth");
  g.stack_read_depth = positive(c, "generator.stack_read_depth");
  g.embedding_dim = positive(c, "generator.embedding_dim");
  g.max_len = positive(c, "generator.max_len");
  return g;
}

generator::TrainOptions generator_train_options(const io::KeyValueConfig& c) {
  generator::TrainOptions t;
  t.epochs = positive(c, "train.epochs");
  t.learning_rate = c.get_double("train.lr", t.learning_rate);
  t.decay = c.get_double("train.decay", t.decay);
  t.batch_size = positive(c, "train.batch");
  t.clip_norm = c.get_double("train.clip", t.clip_norm);
  t.optimizer = autodiff::parse_optimizer(c.get_string("train.optimizer", "sgd"));
  t.shuffle = c.get_bool("train.shuffle", true);
  return t;
}

predictor::PredictorConfig predictor_config(const io::KeyValueConfig& c) {
  predictor::PredictorConfig p;
  p.embedding_dim = positive(c, "predictor.embedding_dim");
  p.hidden_size = positive(c, "predictor.hidden_size");
  p.dense_size = positive(c, "predictor.dense_size");
  return p;
}

predictor::PredictorTrainOptions predictor_train_options(const io::KeyValueConfig& c) {
  predictor::PredictorTrainOptions t;
  t.epochs = positive(c, "predictor.epochs");
  t.learning_rate = c.get_double("predictor.lr", t.learning_rate);
  t.decay = c.get_double("predictor.decay", t.decay);
  t.batch_size = positive(c, "predictor.batch");
  t.optimizer = autodiff::parse_optimizer(c.get_string("predictor.optimizer", "adam"));
  return t;
}

reinforce::FinetuneOptions finetune_options(const io::KeyValueConfig& c) {
  reinforce::FinetuneOptions f;
  f.iterations = positive(c, "finetune.iterations");
  f.batch_size = positive(c, "finetune.batch");
  f.learning_rate = c.get_double("finetune.lr", f.learning_rate);
  f.decay = c.get_double("finetune.decay", f.decay);
  f.clip_norm = c.get_double("finetune.clip", f.clip_norm);
  f.optimizer = autodiff::parse_optimizer(c.get_string("finetune.optimizer", "sgd"));
  f.use_baseline = c.get_bool("finetune.baseline", true);
  f.baseline_decay = c.get_double("finetune.baseline_decay", f.baseline_decay);
  f.checkpoint_every = positive(c, "finetune.checkpoint_every");
  return f;
}

std::string text_header(std::string_view command, const io::KeyValueConfig& config) {
  return io::provenance_header(command, config);
}

std::string with_json_provenance(const std::string& json, std::string_view command, const io::KeyValueConfig& config) {
  nlohmann::ordered_json prov;
  prov["tool"] = "stackrl";
  prov["version"] = STACKRL_VERSION;
  prov["command"] = std::string(command);
  nlohmann::ordered_json cfg = nlohmann::ordered_json::object();
  for (const auto& [k, v] : config.entries()) cfg[k] = v;
  prov["config"] = cfg;
  nlohmann::ordered_json out;
  out["provenance"] = prov;
  const auto body = nlohmann::ordered_json::parse(json);
  for (const auto& [k, v] : body.items()) out[k] = v;
  return out.dump(2) + "\n";
}

void persist_config(std::string_view command, const io::KeyValueConfig& config) {
  const auto dir = output_dir(config);
  io::write_text(dir / (std::string(command) + ".config"),
                 "# stackrl " STACKRL_VERSION " " + std::string(command) + "\n" + config.to_string());
}

}  // namespace stackrl::tools
