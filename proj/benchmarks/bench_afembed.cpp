#include <benchmark/benchmark.h>

#include <string>
#include <vector>

#include "afembed/ck_verify.hpp"
#include "afembed/numeric_rep.hpp"

namespace {

using namespace afembed;

// `loops` disjoint directed cycles of length `n`, each with a pendant vertex.
Graph cycles(std::size_t loops, std::size_t n) {
  std::vector<VertexId> vs;
  std::vector<Edge> es;
  for (std::size_t l = 0; l < loops; ++l) {
    const std::string base = "c" + std::to_string(l) + "_";
    for (std::size_t i = 0; i < n; ++i) vs.emplace_back(base + std::to_string(i));
    for (std::size_t i = 0; i < n; ++i)
      es.push_back({EdgeId("e" + std::to_string(l) + "_" + std::to_string(i)),
                    VertexId(base + std::to_string(i)), VertexId(base + std::to_string((i + 1) % n))});
    vs.emplace_back("out" + std::to_string(l));
    es.push_back({EdgeId("x" + std::to_string(l)), VertexId(base + "0"),
                  VertexId("out" + std::to_string(l))});
  }
  return Graph::build(std::move(vs), std::move(es));
}

void BM_Classify(benchmark::State& state) {
  const Graph g = cycles(static_cast<std::size_t>(state.range(0)), 4);
  for (auto _ : state) benchmark::DoNotOptimize(classify(g));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Classify)->RangeMultiplier(4)->Range(1, 256)->Complexity();

void BM_EmbedMaterialize(benchmark::State& state) {
  const Graph g = cycles(8, 4);
  const auto depth = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    Embedding emb = embed(g);
    benchmark::DoNotOptimize(materialize(emb.spec, depth));
  }
}
BENCHMARK(BM_EmbedMaterialize)->DenseRange(0, 10, 5);

void BM_NormalizeLoopProduct(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Embedding emb = embed(cycles(1, n));
  const CKContext ctx = make_context(emb.spec, 0);
  const SimpleLoop& loop = emb.spec.replacements[0].loop;
  for (auto _ : state) {
    CKTerm prod = emb.map.edges.at(loop.edges().front());
    for (std::size_t i = 1; i < n; ++i) prod = multiply(prod, emb.map.edges.at(loop.edges()[i]), ctx);
    benchmark::DoNotOptimize(prod);
  }
}
BENCHMARK(BM_NormalizeLoopProduct)->RangeMultiplier(2)->Range(1, 64);

void BM_VerifyFamily(benchmark::State& state) {
  const Embedding emb = embed(cycles(static_cast<std::size_t>(state.range(0)), 4));
  const CKContext ctx = make_context(emb.spec, 0);
  for (auto _ : state) benchmark::DoNotOptimize(verify_ck_family(emb.map, ctx));
}
BENCHMARK(BM_VerifyFamily)->RangeMultiplier(2)->Range(1, 8);

void BM_BuildRep(benchmark::State& state) {
  const Embedding emb = embed(cycles(1, 4));
  const auto depth = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(build_rep(emb.spec, depth));
}
BENCHMARK(BM_BuildRep)->DenseRange(2, 10, 2);

void BM_Residuals(benchmark::State& state) {
  const Embedding emb = embed(cycles(1, 4));
  const TruncatedRep rep = build_rep(emb.spec, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(relation_residuals(rep, emb.map));
}
BENCHMARK(BM_Residuals)->DenseRange(2, 8, 2);

void BM_LoopSpectrum(benchmark::State& state) {
  const Embedding emb = embed(cycles(1, 4));
  const TruncatedRep rep = build_rep(emb.spec, static_cast<std::size_t>(state.range(0)));
  const SimpleLoop& loop = emb.spec.replacements[0].loop;
  for (auto _ : state) benchmark::DoNotOptimize(loop_spectrum(rep, emb.spec, loop, emb.map));
}
BENCHMARK(BM_LoopSpectrum)->DenseRange(4, 10, 2);

}  // namespace

BENCHMARK_MAIN();
