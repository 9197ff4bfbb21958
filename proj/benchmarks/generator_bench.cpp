#include <benchmark/benchmark.h>

#include "stackrl/chem/tokenizer.h"
#include "stackrl/corpus/mini_smiles.h"
#include "stackrl/generator/cell.h"
#include "stackrl/generator/sampling.h"
#include "stackrl/generator/training.h"

namespace {

using namespace stackrl;

struct Setup {
  std::vector<std::string> corpus;
  chem::Vocabulary vocab;
  generator::GeneratorModel model;
};

// Hidden size and stack width come from the benchmark arguments.
Setup make_setup(std::size_t hidden, std::size_t width) {
  Rng rng(1);
  auto corpus = corpus::mini_smiles_corpus(200, {}, rng);
  auto vocab = chem::build_vocabulary(corpus, chem::TokenMode::kSmiles);
  generator::GeneratorConfig cfg;
  cfg.hidden_size = hidden;
  cfg.stack_width = width;
  cfg.stack_depth = 32;
  cfg.embedding_dim = 16;
  cfg.vocab_size = vocab.size();
  cfg.max_len = 80;
  generator::GeneratorModel model(cfg, vocab, rng);
  return {std::move(corpus), vocab, std::move(model)};
}

void BM_CellStep(benchmark::State& state) {
  const auto s = make_setup(state.range(0), state.range(1));
  auto cell = generator::init_state(s.model.config());
  for (auto _ : state) {
    auto next = generator::cell_step(s.model, cell, 3);
    benchmark::DoNotOptimize(next.probs.data());
  }
}
BENCHMARK(BM_CellStep)->Args({32, 0})->Args({32, 16})->Args({128, 16})->Args({128, 64});

void BM_SequenceLogProb(benchmark::State& state) {
  const auto s = make_setup(state.range(0), state.range(1));
  const auto seq = chem::encode(s.corpus[0], s.vocab);
  for (auto _ : state) benchmark::DoNotOptimize(generator::sequence_log_prob(s.model, seq));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(seq.size() - 1));
}
BENCHMARK(BM_SequenceLogProb)->Args({32, 16})->Args({128, 16});

void BM_LogProbGradient(benchmark::State& state) {
  const auto s = make_setup(state.range(0), state.range(1));
  const auto seq = chem::encode(s.corpus[0], s.vocab);
  for (auto _ : state) {
    auto g = generator::log_prob_gradient(s.model, seq, 1.0);
    benchmark::DoNotOptimize(g.log_prob);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(seq.size() - 1));
}
BENCHMARK(BM_LogProbGradient)->Args({32, 0})->Args({32, 16})->Args({128, 16});

void BM_Sample(benchmark::State& state) {
  const auto s = make_setup(state.range(0), state.range(1));
  Rng rng(2);
  for (auto _ : state) benchmark::DoNotOptimize(generator::sample(s.model, rng).ids.size());
}
BENCHMARK(BM_Sample)->Args({32, 16})->Args({128, 16});

void BM_TrainEpoch(benchmark::State& state) {
  auto s = make_setup(32, 16);
  std::vector<chem::TokenSequence> seqs;
  for (std::size_t i = 0; i < 64; ++i) seqs.push_back(chem::encode(s.corpus[i], s.vocab));
  generator::TrainOptions opt;
  opt.epochs = 1;
  Rng rng(3);
  for (auto _ : state) benchmark::DoNotOptimize(generator::train_supervised(s.model, seqs, opt, rng));
  state.SetItemsProcessed(state.iterations() * 64);
}
BENCHMARK(BM_TrainEpoch)->Unit(benchmark::kMillisecond);

}  // namespace
