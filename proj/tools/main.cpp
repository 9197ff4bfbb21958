#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "commands.h"
#include "run_config.h"
#include "stackrl/errors.h"

namespace {

using stackrl::io::KeyValueConfig;

constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitNumerical = 3;

// Command-line flags that stand for config keys; applied after --config and
// --set so that explicit flags win.
struct Settings {
  std::string config_file;
  std::vector<std::string> overrides;
  std::map<std::string, std::string> flags;
};

void add_flag(CLI::App* sub, Settings& s, const std::string& flag, const std::string& key, const std::string& help) {
  sub->add_option_function<std::string>(flag, [&s, key](const std::string& v) { s.flags[key] = v; },
                                        help + " (" + key + ")");
}

CLI::App* add_command(CLI::App& app, Settings& s, const std::string& name, const std::string& help) {
  CLI::App* sub = app.add_subcommand(name, help);
  sub->add_option("-c,--config", s.config_file, "key = value configuration file");
  sub->add_option("--set", s.overrides, "override a configuration key, KEY=VALUE (repeatable)");
  add_flag(sub, s, "--out-dir", "out_dir", "output directory");
  add_flag(sub, s, "--seed", "seed", "random seed");
  return sub;
}

KeyValueConfig resolve(const Settings& s) {
  KeyValueConfig c = stackrl::tools::default_config();
  if (!s.config_file.empty()) c.merge(KeyValueConfig::load(s.config_file));
  for (const auto& o : s.overrides) c.apply_override(o);
  for (const auto& [k, v] : s.flags) c.set(k, v);
  stackrl::tools::check_known_keys(c);
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stack-augmented recurrent generator with reinforcement fine-tuning"};
  app.set_version_flag("--version", std::string("stackrl ") + STACKRL_VERSION);
  app.require_subcommand(1);
  Settings s;

  auto* corpus = add_command(app, s, "corpus", "write a bundled toy corpus (Dyck words or mini-SMILES)");
  add_flag(corpus, s, "--kind", "corpus.kind", "dyck or smiles");
  add_flag(corpus, s, "-n", "corpus.n", "number of strings");

  auto* ingest = add_command(app, s, "ingest", "clean a corpus and build its vocabulary");
  add_flag(ingest, s, "--corpus", "corpus", "input strings, one per line");
  add_flag(ingest, s, "--max-length", "filter.max_length", "drop strings longer than this");
  add_flag(ingest, s, "--mode", "ingest.mode", "smiles (validated) or characters");

  auto* pretrain = add_command(app, s, "pretrain", "train the stack-augmented generator");
  auto* nostack = add_command(app, s, "pretrain-nostack", "train the generator without stack memory");
  for (auto* sub : {pretrain, nostack}) {
    add_flag(sub, s, "--corpus", "corpus", "ingested corpus");
    add_flag(sub, s, "--vocab", "vocab", "vocabulary from ingest");
    add_flag(sub, s, "--epochs", "train.epochs", "training epochs");
    add_flag(sub, s, "--lr", "train.lr", "initial learning rate");
  }

  auto* generate = add_command(app, s, "generate", "sample strings and report on the library");
  add_flag(generate, s, "--checkpoint", "checkpoint", "generator checkpoint");
  add_flag(generate, s, "-n", "generate.n", "number of samples");
  add_flag(generate, s, "--train", "train_corpus", "training corpus for novelty/similarity");
  add_flag(generate, s, "--temperature", "generate.temperature", "sampling temperature");

  auto* make_dataset = add_command(app, s, "make-dataset", "label SMILES with a computable property");
  add_flag(make_dataset, s, "--corpus", "corpus", "input SMILES");
  add_flag(make_dataset, s, "--feature", "make_dataset.feature", "property to compute");

  auto* train_pred = add_command(app, s, "train-predictor", "train the property predictor");
  auto* crossval = add_command(app, s, "crossval", "k-fold cross-validation of the predictor");
  for (auto* sub : {train_pred, crossval}) {
    add_flag(sub, s, "--dataset", "dataset", "SMILES<TAB>value file");
    add_flag(sub, s, "--epochs", "predictor.epochs", "training epochs");
  }
  add_flag(train_pred, s, "--vocab", "vocab", "generator vocabulary to cover");
  add_flag(crossval, s, "--folds", "predictor.folds", "number of folds");

  auto* finetune = add_command(app, s, "finetune", "reinforcement fine-tuning of a generator");
  add_flag(finetune, s, "--checkpoint", "checkpoint", "pretrained generator");
  add_flag(finetune, s, "--iterations", "finetune.iterations", "policy-gradient iterations");
  add_flag(finetune, s, "--train", "train_corpus", "training corpus for reports");

  auto* report = add_command(app, s, "report", "library report for a sample file");
  add_flag(report, s, "--samples", "samples", "strings to analyse");
  add_flag(report, s, "--baseline", "baseline_samples", "optional baseline library to compare against");
  add_flag(report, s, "--train", "train_corpus", "training corpus");
  add_flag(report, s, "--property", "report.property", "none, predictor, or a feature name");

  auto* trace = add_command(app, s, "trace", "hidden-unit activations along a string");
  add_flag(trace, s, "--checkpoint", "checkpoint", "generator checkpoint");
  add_flag(trace, s, "--smiles", "trace.smiles", "input string");
  add_flag(trace, s, "--unit", "trace.unit", "hidden unit index");
  trace->add_flag_function("--color", [&s](std::int64_t) { s.flags["trace.color"] = "true"; },
                           "colour tokens by activation (ANSI)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    const KeyValueConfig c = resolve(s);
    namespace t = stackrl::tools;
    if (corpus->parsed()) return t::cmd_corpus(c);
    if (ingest->parsed()) return t::cmd_ingest(c);
    if (pretrain->parsed()) return t::cmd_pretrain(c, true);
    if (nostack->parsed()) return t::cmd_pretrain(c, false);
    if (generate->parsed()) return t::cmd_generate(c);
    if (make_dataset->parsed()) return t::cmd_make_dataset(c);
    if (train_pred->parsed()) return t::cmd_train_predictor(c);
    if (crossval->parsed()) return t::cmd_crossval(c);
    if (finetune->parsed()) return t::cmd_finetune(c);
    if (report->parsed()) return t::cmd_report(c);
    if (trace->parsed()) return t::cmd_trace(c);
  } catch (const stackrl::NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const stackrl::DataError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  }
  return kExitUsage;
}
