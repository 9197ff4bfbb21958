#include "commands.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <set>

#include <json.hpp>

#include "run_config.h"
#include "stackrl/analysis/output.h"
#include "stackrl/analysis/report.h"
#include "stackrl/chem/properties.h"
#include "stackrl/chem/tokenizer.h"
#include "stackrl/chem/validator.h"
#include "stackrl/corpus/dyck.h"
#include "stackrl/corpus/mini_smiles.h"
#include "stackrl/errors.h"
#include "stackrl/generator/cell.h"
#include "stackrl/generator/checkpoint.h"
#include "stackrl/generator/sampling.h"
#include "stackrl/predictor/dataset.h"
#include "stackrl/reinforce/rollout.h"

namespace stackrl::tools {
namespace fs = std::filesystem;
using io::KeyValueConfig;

namespace {

void log(const std::string& msg) { std::cerr << msg << "\n"; }

// "id<TAB>token" per line; tokens such as '#' cannot clash with comments.
void write_vocabulary(const fs::path& path, const chem::Vocabulary& vocab, const std::string& header) {
  std::string text = header;
  for (std::size_t i = 0; i < vocab.size(); ++i) {
    text += std::to_string(i) + "\t" + vocab.token(static_cast<chem::TokenId>(i)) + "\n";
  }
  io::write_text(path, text);
}

chem::Vocabulary read_vocabulary(const fs::path& path) {
  std::vector<std::string> tokens;
  for (const auto& raw : io::split(io::read_text(path), '\n')) {
    if (raw.empty() || raw.front() == '#') continue;
    const auto tab = raw.find('\t');
    if (tab == std::string::npos) throw DataError("vocabulary file " + path.string() + ": expected id<TAB>token");
    if (std::stoul(raw.substr(0, tab)) != tokens.size()) {
      throw DataError("vocabulary file " + path.string() + ": ids must be consecutive from 0");
    }
    tokens.push_back(raw.substr(tab + 1));
  }
  return chem::Vocabulary::from_full_list(tokens);
}

std::vector<std::string> read_lines_file(const KeyValueConfig& c, std::string_view key) {
  return io::read_smiles_file(require_path(c, key));
}

analysis::PropertyOracle property_oracle(const KeyValueConfig& c) {
  const std::string name = c.get_string("report.property", "none");
  if (name == "none") return {};
  if (name == "predictor") {
    auto model = std::make_shared<predictor::PredictorModel>(predictor::load_predictor(require_path(c, "reward.predictor")));
    return [model](const std::string& s) -> std::optional<double> {
      try {
        return predictor::predict(*model, s);
      } catch (const DataError&) {
        return std::nullopt;
      }
    };
  }
  const chem::Feature f = chem::parse_feature(name);
  return [f](const std::string& s) { return chem::compute_feature(f, s); };
}

analysis::ReportOptions report_options(const KeyValueConfig& c) {
  analysis::ReportOptions o;
  o.similarity_threshold = c.get_double("report.threshold", o.similarity_threshold);
  o.histogram_bins = static_cast<std::size_t>(c.get_int("report.bins", 40));
  o.pair_seed = seed_of(c);
  o.property = property_oracle(c);
  return o;
}

std::vector<std::string> training_strings(const KeyValueConfig& c) {
  if (c.get_string("train_corpus", "").empty()) return {};
  return read_lines_file(c, "train_corpus");
}

void write_report_files(const fs::path& dir, const std::string& stem, const analysis::LibraryReport& report,
                        std::string_view command, const KeyValueConfig& c) {
  io::write_text(dir / (stem + ".json"), with_json_provenance(analysis::report_json(report), command, c));
  io::write_text(dir / (stem + "_samples.csv"), analysis::samples_csv(report, text_header(command, c)));
  io::write_text(dir / (stem + "_histogram.txt"), analysis::histogram_text(report.histogram, text_header(command, c)));
}

std::string format_metrics(const predictor::RegressionMetrics& m) {
  char buf[128];
  std::snprintf(buf, sizeof buf, "n=%zu rmse=%.4f r2=%.4f", m.n, m.rmse, m.r2);
  return buf;
}

nlohmann::ordered_json metrics_json(const predictor::RegressionMetrics& m) {
  nlohmann::ordered_json j;
  j["n"] = m.n;
  j["sse"] = m.sse;
  j["sst"] = m.sst;
  j["rmse"] = m.rmse;
  j["r2"] = std::isfinite(m.r2) ? nlohmann::ordered_json(m.r2) : nlohmann::ordered_json(nullptr);
  return j;
}

}  // namespace

int cmd_corpus(const KeyValueConfig& c) {
  Rng rng(seed_of(c));
  const auto n = static_cast<std::size_t>(c.get_int("corpus.n", 5000));
  const std::string kind = c.get_string("corpus.kind", "smiles");
  std::vector<std::string> lines;
  if (kind == "dyck") {
    corpus::DyckOptions o;
    o.max_pairs = static_cast<std::size_t>(c.get_int("corpus.dyck_max_pairs", 12));
    o.max_depth = static_cast<std::size_t>(c.get_int("corpus.dyck_max_depth", 8));
    lines = corpus::dyck_corpus(n, o, rng);
  } else if (kind == "smiles") {
    lines = corpus::mini_smiles_corpus(n, {}, rng);
  } else {
    throw DataError("corpus.kind must be 'dyck' or 'smiles'");
  }
  const auto dir = output_dir(c);
  io::write_lines(dir / (kind + ".txt"), text_header("corpus", c), lines);
  persist_config("corpus", c);
  log("corpus: wrote " + std::to_string(lines.size()) + " " + kind + " strings");
  return 0;
}

int cmd_ingest(const KeyValueConfig& c) {
  const auto raw = read_lines_file(c, "corpus");
  const auto max_length = static_cast<std::size_t>(c.get_int("filter.max_length", 100));
  const std::string mode = c.get_string("ingest.mode", "smiles");
  if (mode != "smiles" && mode != "characters") throw DataError("ingest.mode must be 'smiles' or 'characters'");
  std::vector<std::string> kept;
  std::set<std::string> seen;
  std::string dropped = text_header("ingest", c) + "line\treason\ttext\n";
  std::size_t n_invalid = 0, n_long = 0, n_dup = 0;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    const std::string& s = raw[i];
    if (mode == "smiles") {
      const auto report = chem::validate(s);
      if (!report.valid) {
        ++n_invalid;
        dropped += std::to_string(i + 1) + "\tunparseable: " + report.summary() + "\t" + s + "\n";
        continue;
      }
    }
    if (s.size() > max_length) {
      ++n_long;
      dropped += std::to_string(i + 1) + "\tlength " + std::to_string(s.size()) + " > " +
                 std::to_string(max_length) + "\t" + s + "\n";
      continue;
    }
    if (!seen.insert(s).second) {
      ++n_dup;
      dropped += std::to_string(i + 1) + "\tduplicate\t" + s + "\n";
      continue;
    }
    kept.push_back(s);
  }
  if (kept.empty()) throw DataError("ingest: nothing left after filtering");
  const auto vocab = chem::build_vocabulary(
      kept, mode == "smiles" ? chem::TokenMode::kSmiles : chem::TokenMode::kCharacters);
  const auto dir = output_dir(c);
  const std::string header = text_header("ingest", c);
  io::write_lines(dir / "corpus.txt", header, kept);
  write_vocabulary(dir / "vocab.tsv", vocab, header);
  io::write_text(dir / "dropped.tsv", dropped);
  persist_config("ingest", c);
  log("ingest: kept " + std::to_string(kept.size()) + " of " + std::to_string(raw.size()) + " (unparseable " +
      std::to_string(n_invalid) + ", too long " + std::to_string(n_long) + ", duplicate " + std::to_string(n_dup) +
      "); vocabulary " + std::to_string(vocab.size()) + " tokens");
  return 0;
}

int cmd_pretrain(const KeyValueConfig& c, bool with_stack) {
  const std::string command = with_stack ? "pretrain" : "pretrain-nostack";
  const auto corpus_lines = read_lines_file(c, "corpus");
  const auto vocab = read_vocabulary(require_path(c, "vocab"));
  auto cfg = generator_config(c);
  if (!with_stack) cfg = cfg.without_stack();
  cfg.vocab_size = vocab.size();
  std::vector<chem::TokenSequence> seqs;
  for (const auto& s : corpus_lines) {
    auto seq = chem::encode(s, vocab);
    if (seq.size() - 1 > cfg.max_len) {
      throw DataError("pretrain: '" + s + "' has " + std::to_string(seq.size() - 1) +
                      " tokens, more than generator.max_len");
    }
    seqs.push_back(std::move(seq));
  }
  Rng rng(seed_of(c));
  generator::GeneratorModel model(cfg, vocab, rng);
  auto options = generator_train_options(c);
  options.on_epoch = [](std::size_t e, double loss) {
    log("epoch " + std::to_string(e) + " loss " + io::format_double(loss));
  };
  const auto history = generator::train_supervised(model, seqs, options, rng);
  const auto dir = output_dir(c);
  generator::save_generator(dir / "generator.ckpt", model);
  std::string csv = text_header(command, c) + "epoch,loss\n";
  for (std::size_t e = 0; e < history.size(); ++e) csv += std::to_string(e) + "," + io::format_double(history[e]) + "\n";
  io::write_text(dir / "loss.csv", csv);
  persist_config(command, c);
  return 0;
}

int cmd_generate(const KeyValueConfig& c) {
  const auto model = generator::load_generator(require_path(c, "checkpoint"));
  const auto n = static_cast<std::size_t>(c.get_int("generate.n", 1000));
  const double temperature = c.get_double("generate.temperature", 1.0);
  Rng rng(seed_of(c));
  std::vector<std::string> samples;
  samples.reserve(n);
  for (std::size_t i = 0; i < n; ++i) samples.push_back(generator::sample_string(model, rng, temperature));
  const auto dir = output_dir(c);
  io::write_lines(dir / "samples.txt", text_header("generate", c), samples);
  const auto report = analysis::build_report(samples, training_strings(c), report_options(c));
  write_report_files(dir, "report", report, "generate", c);
  persist_config("generate", c);
  log("generate: " + std::to_string(n) + " samples, valid fraction " + io::format_double(report.valid_fraction));
  return 0;
}

int cmd_make_dataset(const KeyValueConfig& c) {
  const auto lines = read_lines_file(c, "corpus");
  const auto feature = chem::parse_feature(c.get_string("make_dataset.feature", "token_count"));
  const auto data = predictor::oracle_dataset(lines, feature);
  const auto dir = output_dir(c);
  predictor::write_dataset(dir / "dataset.tsv", data, text_header("make-dataset", c));
  persist_config("make-dataset", c);
  log("make-dataset: " + std::to_string(data.size()) + " records");
  return 0;
}

int cmd_train_predictor(const KeyValueConfig& c) {
  const auto data = predictor::read_dataset(require_path(c, "dataset"));
  if (data.empty()) throw DataError("train-predictor: empty dataset");
  std::optional<chem::Vocabulary> extra;
  if (!c.get_string("vocab", "").empty()) extra = read_vocabulary(require_path(c, "vocab"));
  const auto vocab = predictor::predictor_vocabulary(data.smiles(), extra ? &*extra : nullptr);
  auto cfg = predictor_config(c);
  cfg.vocab_size = vocab.size();
  Rng rng(seed_of(c));
  predictor::PredictorModel model(cfg, vocab, rng);
  auto options = predictor_train_options(c);
  options.on_epoch = [](std::size_t e, double mse) { log("epoch " + std::to_string(e) + " mse " + io::format_double(mse)); };
  const auto history = predictor::train(model, data, options, rng);
  std::vector<double> preds;
  for (const auto& r : data.records) preds.push_back(predictor::predict(model, r.smiles));
  const auto targets = data.targets();
  const auto fit = predictor::regression_metrics(targets, preds);
  const auto dir = output_dir(c);
  predictor::save_predictor(dir / "predictor.ckpt", model);
  nlohmann::ordered_json j;
  j["training_fit"] = metrics_json(fit);
  j["loss_history"] = history;
  io::write_text(dir / "metrics.json", with_json_provenance(j.dump(2), "train-predictor", c));
  persist_config("train-predictor", c);
  log("train-predictor: training fit " + format_metrics(fit));
  return 0;
}

int cmd_crossval(const KeyValueConfig& c) {
  const auto data = predictor::read_dataset(require_path(c, "dataset"));
  const auto folds = static_cast<std::size_t>(c.get_int("predictor.folds", 5));
  Rng rng(seed_of(c));
  const auto result = predictor::cross_validate(data, folds, predictor_config(c), predictor_train_options(c), rng);
  nlohmann::ordered_json j;
  nlohmann::ordered_json per_fold = nlohmann::ordered_json::array();
  for (const auto& m : result.folds) per_fold.push_back(metrics_json(m));
  j["folds"] = per_fold;
  j["pooled"] = metrics_json(result.pooled);
  j["mean_r2"] = result.mean_r2;
  j["mean_rmse"] = result.mean_rmse;
  const auto dir = output_dir(c);
  io::write_text(dir / "crossval.json", with_json_provenance(j.dump(2), "crossval", c));
  std::string csv = text_header("crossval", c) + "record,fold,smiles,target,predicted\n";
  for (const auto& p : result.predictions) {
    csv += std::to_string(p.record) + "," + std::to_string(p.fold) + "," + data.records[p.record].smiles + "," +
           io::format_double(p.target) + "," + io::format_double(p.predicted) + "\n";
  }
  io::write_text(dir / "predictions.csv", csv);
  persist_config("crossval", c);
  for (std::size_t f = 0; f < result.folds.size(); ++f) log("fold " + std::to_string(f) + ": " + format_metrics(result.folds[f]));
  log("crossval: mean r2 " + io::format_double(result.mean_r2) + ", pooled " + format_metrics(result.pooled));
  return 0;
}

int cmd_finetune(const KeyValueConfig& c) {
  auto model = generator::load_generator(require_path(c, "checkpoint"));
  const auto spec = reinforce::RewardSpec::read(c);
  if (spec.uses_predictor()) require_path(c, "reward.predictor");
  const reinforce::RewardFunction reward_fn(spec);
  const auto dir = output_dir(c);
  auto options = finetune_options(c);
  options.checkpoint_path = dir / "finetuned.ckpt";
  options.on_iteration = [](const reinforce::HistoryRow& r) {
    log("iteration " + std::to_string(r.iteration) + " reward " + io::format_double(r.mean_reward) + " valid " +
        io::format_double(r.valid_fraction) + " property " + io::format_double(r.mean_property));
  };
  const auto n_report = static_cast<std::size_t>(c.get_int("finetune.report_samples", 500));
  const auto seed = seed_of(c);

  // Reports on both sides use the same sampling stream, so an unchanged
  // model gives identical before/after reports.
  auto library = [&](const generator::GeneratorModel& m) {
    Rng rng(seed + 1);
    std::vector<std::string> out;
    for (std::size_t i = 0; i < n_report; ++i) out.push_back(generator::sample_string(m, rng));
    return out;
  };
  auto opts = report_options(c);
  if (!opts.property) {
    opts.property = [&reward_fn](const std::string& s) { return reward_fn.property(s, true); };
  }
  const auto reference = analysis::build_reference(training_strings(c));
  auto before = analysis::build_report(library(model), reference, opts);

  Rng rng(seed);
  std::vector<reinforce::HistoryRow> history;
  try {
    history = reinforce::finetune(model, reward_fn, options, rng);
  } catch (const NumericalError&) {
    generator::save_generator(dir / "last_good.ckpt", model);
    throw;
  }
  io::write_text(dir / "history.csv", reinforce::history_csv(history, text_header("finetune", c)));

  auto after = analysis::build_report(library(model), reference, opts);
  write_report_files(dir, "report_before", before, "finetune", c);
  write_report_files(dir, "report_after", after, "finetune", c);
  if (before.mean_property && after.mean_property) {
    analysis::align_histograms(before, after, opts.histogram_bins);
    const auto shift = analysis::compare_distributions(before, after);
    io::write_text(dir / "shift.json", with_json_provenance(analysis::shift_json(shift), "finetune", c));
    log("finetune: mean property " + io::format_double(*before.mean_property) + " -> " +
        io::format_double(*after.mean_property) + " (" + std::string(analysis::verdict_name(shift.verdict)) + ")");
  }
  persist_config("finetune", c);
  return 0;
}

int cmd_report(const KeyValueConfig& c) {
  const auto samples = read_lines_file(c, "samples");
  const auto opts = report_options(c);
  const auto reference = analysis::build_reference(training_strings(c));
  auto report = analysis::build_report(samples, reference, opts);
  const auto dir = output_dir(c);
  if (!c.get_string("baseline_samples", "").empty()) {
    auto baseline = analysis::build_report(read_lines_file(c, "baseline_samples"), reference, opts);
    if (baseline.mean_property && report.mean_property) {
      analysis::align_histograms(baseline, report, opts.histogram_bins);
      const auto shift = analysis::compare_distributions(baseline, report);
      io::write_text(dir / "shift.json", with_json_provenance(analysis::shift_json(shift), "report", c));
    }
    write_report_files(dir, "baseline", baseline, "report", c);
  }
  write_report_files(dir, "report", report, "report", c);
  persist_config("report", c);
  return 0;
}

int cmd_trace(const KeyValueConfig& c) {
  const auto model = generator::load_generator(require_path(c, "checkpoint"));
  const std::string text = c.get_string("trace.smiles", "");
  const long unit = c.get_int("trace.unit", 0);
  if (unit < 0) throw DataError("trace.unit must be non-negative");
  const auto seq = chem::encode(text, model.vocabulary());
  const auto values = generator::trace_activations(model, seq, static_cast<std::size_t>(unit));
  const bool color = c.get_bool("trace.color", false);
  std::size_t width = 5;
  for (std::size_t i = 1; i < seq.ids.size(); ++i) width = std::max(width, model.vocabulary().token(seq.ids[i]).size());
  auto pad = [width](const std::string& s) { return s + std::string(width + 2 - s.size(), ' '); };
  std::cout << pad("token") << "activation\n";
  std::size_t k = 0;
  for (std::size_t i = 1; i < seq.ids.size(); ++i) {
    if (seq.ids[i] == chem::kEnd) continue;
    const std::string& tok = model.vocabulary().token(seq.ids[i]);
    const double v = values[k++];
    if (color) {
      // Cool-warm ramp over [-1, 1]: blue through white to red.
      const double t = (v + 1.0) / 2.0;
      const int r = static_cast<int>(std::lround(255 * std::min(1.0, 2 * t)));
      const int b = static_cast<int>(std::lround(255 * std::min(1.0, 2 * (1 - t))));
      const int g = std::min(r, b);
      std::cout << "\x1b[48;2;" << r << ";" << g << ";" << b << "m\x1b[30m" << tok << "\x1b[0m"
                << pad(tok).substr(tok.size()) << io::format_double(v) << "\n";
    } else {
      std::cout << pad(tok) << io::format_double(v) << "\n";
    }
  }
  return 0;
}

}  // namespace stackrl::tools
