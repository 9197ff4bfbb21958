#include <benchmark/benchmark.h>

#include "stackrl/analysis/report.h"
#include "stackrl/chem/fingerprint.h"
#include "stackrl/chem/rings.h"
#include "stackrl/chem/scaffold.h"
#include "stackrl/chem/tokenizer.h"
#include "stackrl/chem/validator.h"
#include "stackrl/corpus/mini_smiles.h"

namespace {

using namespace stackrl;

const std::vector<std::string>& corpus() {
  static const auto strings = [] {
    Rng rng(1);
    return corpus::mini_smiles_corpus(500, {}, rng);
  }();
  return strings;
}

void BM_Tokenize(benchmark::State& state) {
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(chem::smiles_tokens(corpus()[i++ % corpus().size()]).size());
}
BENCHMARK(BM_Tokenize);

void BM_Validate(benchmark::State& state) {
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(chem::validate(corpus()[i++ % corpus().size()]).valid);
}
BENCHMARK(BM_Validate);

void BM_Fingerprint(benchmark::State& state) {
  std::vector<chem::MoleculeGraph> graphs;
  for (const auto& s : corpus()) graphs.push_back(chem::parse_graph(s));
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(chem::fingerprint(graphs[i++ % graphs.size()]).count());
}
BENCHMARK(BM_Fingerprint);

void BM_Tanimoto(benchmark::State& state) {
  const auto a = chem::fingerprint(chem::parse_graph(corpus()[0]));
  const auto b = chem::fingerprint(chem::parse_graph(corpus()[1]));
  for (auto _ : state) benchmark::DoNotOptimize(chem::tanimoto(a, b));
}
BENCHMARK(BM_Tanimoto);

void BM_BenzeneRings(benchmark::State& state) {
  std::vector<chem::MoleculeGraph> graphs;
  for (const auto& s : corpus()) graphs.push_back(chem::parse_graph(s));
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(chem::count_benzene_rings(graphs[i++ % graphs.size()]));
}
BENCHMARK(BM_BenzeneRings);

void BM_Scaffold(benchmark::State& state) {
  std::vector<chem::MoleculeGraph> graphs;
  for (const auto& s : corpus()) graphs.push_back(chem::parse_graph(s));
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(chem::graph_key(chem::murcko_scaffold(graphs[i++ % graphs.size()])));
}
BENCHMARK(BM_Scaffold);

void BM_LibraryReport(benchmark::State& state) {
  const std::vector<std::string> samples(corpus().begin(), corpus().begin() + state.range(0));
  const auto reference = analysis::build_reference(corpus());
  for (auto _ : state) benchmark::DoNotOptimize(analysis::build_report(samples, reference).internal_diversity);
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_LibraryReport)->Arg(100)->Arg(400)->Unit(benchmark::kMillisecond);

}  // namespace
