// Copyright 2026 The nestlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include <algorithm>
#include <numeric>

#include "nestlab/decoder.hpp"
#include "nestlab/montecarlo.hpp"
#include "nestlab/nest.hpp"

namespace {

using namespace nestlab;

void BM_BuildNest(benchmark::State &state) {
    const int d = static_cast<int>(state.range(0));
    const auto b = state.range(1) == 0 ? Boundary::kPlanar : Boundary::kCyclic;
    const auto sched = build_round_schedule(build_layout(d, b));
    for (auto _ : state) {
        auto nest = build_nest(sched, 2 * d + 1, 0.001, PauliKind::kX);
        benchmark::DoNotOptimize(nest.size());
    }
}
BENCHMARK(BM_BuildNest)->ArgsProduct({{3, 5, 7}, {0, 1}})->Unit(benchmark::kMillisecond);

void BM_MatchingGraph(benchmark::State &state) {
    const int d = static_cast<int>(state.range(0));
    const auto nest = build_nest(build_round_schedule(build_layout(d, Boundary::kCyclic)), 2 * d, 0.001, PauliKind::kX,
                                 {TimeBoundary::kPerfectReadout});
    for (auto _ : state) {
        auto g = build_matching_graph(nest);
        benchmark::DoNotOptimize(g.node_count());
    }
}
BENCHMARK(BM_MatchingGraph)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);

void BM_Mwpm(benchmark::State &state) {
    const auto events = static_cast<std::size_t>(state.range(0));
    const auto nest = build_nest(build_round_schedule(build_layout(6, Boundary::kPlanar)), 12, 0.001, PauliKind::kX,
                                 {TimeBoundary::kPerfectReadout});
    const auto g = build_matching_graph(nest);
    Rng rng(1);
    std::vector<std::size_t> pool(g.events().size());
    std::iota(pool.begin(), pool.end(), std::size_t{0});
    for (auto _ : state) {
        state.PauseTiming();
        std::shuffle(pool.begin(), pool.end(), rng);
        std::vector<std::size_t> chosen(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(events));
        state.ResumeTiming();
        benchmark::DoNotOptimize(mwpm(g, chosen).total_weight);
    }
}
BENCHMARK(BM_Mwpm)->Arg(4)->Arg(16)->Arg(64);

void BM_BlockTrial(benchmark::State &state) {
    TrialConfig c;
    c.distance = static_cast<int>(state.range(0));
    c.boundary = state.range(1) == 0 ? Boundary::kPlanar : Boundary::kCyclic;
    c.p = 1e-3;
    const BlockSimulator sim(c);
    std::uint64_t k = 0;
    for (auto _ : state) {
        Rng rng(7, k++);
        benchmark::DoNotOptimize(sim.run(rng));
    }
}
BENCHMARK(BM_BlockTrial)->ArgsProduct({{4, 6}, {0, 1}});

}  // namespace

BENCHMARK_MAIN();
