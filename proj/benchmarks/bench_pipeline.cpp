#include <benchmark/benchmark.h>

#include "multihop/baselines.hpp"
#include "multihop/debias.hpp"
#include "multihop/graph.hpp"
#include "multihop/induce.hpp"
#include "multihop/synth.hpp"

namespace {

using namespace multihop;

Fixture bench_fixture(std::size_t n_facts) {
  FixtureSpec spec;
  spec.n_entities = 40;
  spec.n_facts = n_facts;
  spec.chain_lengths = {2, 3};
  spec.distractors = 3;
  spec.seed = 5;
  return generate_fixture(spec);
}

void BM_Tokenize(benchmark::State& state) {
  const std::string text =
      "The committee, convening early, reviewed thirty-two applications; "
      "most were rejected (for cause).";
  for (auto _ : state) {
    benchmark::DoNotOptimize(tokenize(text));
  }
}
BENCHMARK(BM_Tokenize);

void BM_AnnotateMentions(benchmark::State& state) {
  const Fixture fx = bench_fixture(50);
  const Lexicon lexicon = Lexicon::from_kb(fx.kb);
  const Corpus corpus = fx.corpus();
  for (auto _ : state) {
    for (const auto& doc : corpus.docs) {
      benchmark::DoNotOptimize(annotate_mentions(doc, lexicon));
    }
  }
}
BENCHMARK(BM_AnnotateMentions);

void BM_GraphBuild(benchmark::State& state) {
  const Fixture fx = bench_fixture(static_cast<std::size_t>(state.range(0)));
  const Corpus corpus = fx.corpus();
  for (auto _ : state) {
    benchmark::DoNotOptimize(build_encyclopedic_graph(corpus, fx.kb));
  }
}
BENCHMARK(BM_GraphBuild)->Arg(100)->Arg(500);

void BM_Traverse(benchmark::State& state) {
  const Fixture fx = bench_fixture(200);
  const Corpus corpus = fx.corpus();
  const BipartiteGraph graph = build_encyclopedic_graph(corpus, fx.kb);
  const auto queries = queries_from_kb(fx.kb);
  for (auto _ : state) {
    for (const auto& [q, answer] : queries) {
      const auto endpoints = endpoint_set(fx.kb, q, answer);
      benchmark::DoNotOptimize(traverse(graph, q.subject, endpoints, 3));
    }
  }
}
BENCHMARK(BM_Traverse);

void BM_InduceSplit(benchmark::State& state) {
  const Fixture fx = bench_fixture(static_cast<std::size_t>(state.range(0)));
  const Corpus corpus = fx.corpus();
  const BipartiteGraph graph = build_encyclopedic_graph(corpus, fx.kb);
  InduceConfig ic;
  ic.seed = 3;
  for (auto _ : state) {
    benchmark::DoNotOptimize(induce_split(fx.kb, graph, corpus, ic));
  }
}
BENCHMARK(BM_InduceSplit)->Arg(100)->Arg(500);

void BM_MaskSample(benchmark::State& state) {
  const Fixture fx = bench_fixture(100);
  const Corpus corpus = fx.corpus();
  const BipartiteGraph graph = build_encyclopedic_graph(corpus, fx.kb);
  const auto induced = induce_split(fx.kb, graph, corpus, InduceConfig{});
  for (auto _ : state) {
    for (const auto& s : induced.samples) {
      benchmark::DoNotOptimize(mask_sample(s, 100, 7));
    }
  }
}
BENCHMARK(BM_MaskSample);

void BM_TfIdfPredict(benchmark::State& state) {
  const Fixture fx = bench_fixture(100);
  const Corpus corpus = fx.corpus();
  const BipartiteGraph graph = build_encyclopedic_graph(corpus, fx.kb);
  const auto induced = induce_split(fx.kb, graph, corpus, InduceConfig{});
  for (auto _ : state) {
    for (const auto& s : induced.samples) {
      benchmark::DoNotOptimize(predict_tfidf(s));
    }
  }
}
BENCHMARK(BM_TfIdfPredict);

}  // namespace

BENCHMARK_MAIN();
