#include <benchmark/benchmark.h>

#include "stackrl/chem/tokenizer.h"
#include "stackrl/corpus/mini_smiles.h"
#include "stackrl/predictor/model.h"
#include "stackrl/reinforce/policy_gradient.h"
#include "stackrl/reinforce/rollout.h"

namespace {

using namespace stackrl;

void BM_PredictorForward(benchmark::State& state) {
  Rng rng(1);
  const auto strings = corpus::mini_smiles_corpus(100, {}, rng);
  const auto vocab = predictor::predictor_vocabulary(strings);
  predictor::PredictorConfig cfg;
  cfg.hidden_size = state.range(0);
  cfg.dense_size = state.range(0);
  cfg.embedding_dim = 32;
  cfg.vocab_size = vocab.size();
  predictor::PredictorModel model(cfg, vocab, rng);
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(predictor::predict(model, strings[i++ % strings.size()]));
}
BENCHMARK(BM_PredictorForward)->Arg(32)->Arg(100);

void BM_RolloutAndGradient(benchmark::State& state) {
  Rng rng(2);
  const auto strings = corpus::mini_smiles_corpus(200, {}, rng);
  const auto vocab = chem::build_vocabulary(strings, chem::TokenMode::kSmiles);
  generator::GeneratorConfig cfg;
  cfg.hidden_size = 32;
  cfg.stack_width = 16;
  cfg.stack_depth = 16;
  cfg.embedding_dim = 8;
  cfg.vocab_size = vocab.size();
  cfg.max_len = 80;
  generator::GeneratorModel model(cfg, vocab, rng);
  reinforce::RewardSpec spec;
  spec.kind = reinforce::RewardKind::kStructCountExp;
  spec.feature = chem::Feature::kBenzeneRings;
  const reinforce::RewardFunction rf(spec);
  for (auto _ : state) {
    const auto episodes = reinforce::rollout(model, rf, 16, rng);
    benchmark::DoNotOptimize(reinforce::policy_gradient(model, episodes, 1.0).global_norm());
  }
  state.SetItemsProcessed(state.iterations() * 16);
}
BENCHMARK(BM_RolloutAndGradient)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
