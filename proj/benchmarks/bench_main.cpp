// Microbenchmarks for the hot paths: the per-swap delta evaluation, one
// full descent, factor enumeration, swap-space enumeration, and the
// pattern embedding.

#include <cstdint>
#include <utility>
#include <vector>

#include "benchmark/benchmark.h"

#include "balfactor/bounds.hpp"
#include "balfactor/clique_solver.hpp"
#include "balfactor/graph.hpp"
#include "balfactor/h_embedder.hpp"
#include "balfactor/oracle.hpp"
#include "balfactor/palette.hpp"
#include "balfactor/rng.hpp"

namespace {

using namespace balfactor;

ColouredCompleteGraph balanced_instance(Vertex n_v, int k,
                                        std::uint64_t seed) {
  return random_balanced_colouring(n_v, Palette::simplex(k), seed);
}

void bm_swap_delta(benchmark::State& state) {
  const auto n_v = static_cast<Vertex>(state.range(0));
  const ColouredCompleteGraph g = balanced_instance(n_v, 3, 1);
  const CliqueFactor f = initial_factor(n_v, 2, InitStrategy::kRandom, 2);
  ColourCounts b(3, 0);
  for (const auto& part : f.parts) {
    ++b[static_cast<std::size_t>(g.colour(part[0], part[1]))];
  }
  rng::Engine eng(3);
  std::vector<std::pair<Vertex, Vertex>> pairs;
  for (int i = 0; i < 512; ++i) {
    const auto u = static_cast<Vertex>(rng::bounded(eng, n_v));
    auto v = static_cast<Vertex>(rng::bounded(eng, n_v));
    if (f.part_of[u] == f.part_of[v]) v = v == 0 ? 2 : v - 1;
    if (f.part_of[u] == f.part_of[v]) continue;
    pairs.emplace_back(u, v);
  }
  std::size_t i = 0;
  for (auto _ : state) {
    const auto& [u, v] = pairs[i++ % pairs.size()];
    const SwapVector x = swap_vector(g, f, u, v);
    benchmark::DoNotOptimize(swap_delta_exact(g.palette(), b, x));
  }
}
BENCHMARK(bm_swap_delta)->Arg(64)->Arg(256);

void bm_local_search(benchmark::State& state) {
  const auto n_v = static_cast<Vertex>(state.range(0));
  const ColouredCompleteGraph g = balanced_instance(n_v, 3, 4);
  for (auto _ : state) {
    CliqueFactor f0 = initial_factor(n_v, 2, InitStrategy::kRandom, 5);
    benchmark::DoNotOptimize(local_search(g, std::move(f0)));
  }
}
BENCHMARK(bm_local_search)->Arg(24)->Arg(60)->Arg(120)
    ->Unit(benchmark::kMillisecond);

void bm_factor_enumeration(benchmark::State& state) {
  const auto n_v = static_cast<Vertex>(state.range(0));
  for (auto _ : state) {
    std::int64_t count = 0;
    for_each_clique_factor(n_v, 2, [&](const CliqueFactor&) {
      ++count;
      return true;
    });
    benchmark::DoNotOptimize(count);
  }
}
BENCHMARK(bm_factor_enumeration)->Arg(8)->Arg(10)
    ->Unit(benchmark::kMicrosecond);

void bm_swap_space(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        enumerate_swap_space(static_cast<int>(state.range(0)), 3));
  }
}
BENCHMARK(bm_swap_space)->Arg(3)->Arg(4)->Unit(benchmark::kMicrosecond);

void bm_embedding(benchmark::State& state) {
  const auto n_v = static_cast<Vertex>(state.range(0));
  const ColouredCompleteGraph g = balanced_instance(n_v, 3, 6);
  const CliqueFactor f = initial_factor(n_v, 3, InitStrategy::kRandom, 7);
  PatternGraph h;
  h.r = 3;
  h.edges = {{0, 1}, {1, 2}};
  for (auto _ : state) {
    benchmark::DoNotOptimize(embed_h_factor(g, f, h));
  }
}
BENCHMARK(bm_embedding)->Arg(60)->Arg(150)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
