// Copyright 2026 The rtmatch Authors
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

#include "rtm/harness.h"
#include "rtm/oracle.h"

using namespace rtm;

static void BM_PathTableSerial(benchmark::State& state) {
    auto g = build_decoding_graph(static_cast<int>(state.range(0)), static_cast<int>(state.range(0)), 1e-3);
    for (auto _ : state)
        benchmark::DoNotOptimize(build_path_table_serial(g));
}
BENCHMARK(BM_PathTableSerial)->Arg(5)->Arg(9)->Arg(11)->Unit(benchmark::kMillisecond);

static void BM_PathTableParallel(benchmark::State& state) {
    auto g = build_decoding_graph(static_cast<int>(state.range(0)), static_cast<int>(state.range(0)), 1e-3);
    for (auto _ : state)
        benchmark::DoNotOptimize(build_path_table(g));
}
BENCHMARK(BM_PathTableParallel)->Arg(5)->Arg(9)->Arg(11)->Unit(benchmark::kMillisecond);

namespace {

const Experiment& d11() {
    static const Experiment e([] {
        ExperimentConfig c;
        c.distance = 11;
        c.p = 1e-4;
        return c;
    }());
    return e;
}

ErrorSet heavy(std::int64_t i) {
    return inject_k_errors(d11().graph(), 6 + static_cast<int>(i % 19), derive_seed(1, 500, static_cast<std::uint64_t>(i)));
}

}  // namespace

static void BM_TrialsSerial(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(run_trials_serial(d11(), heavy, state.range(0)));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_TrialsSerial)->Arg(20000)->Unit(benchmark::kMillisecond);

static void BM_TrialsParallel(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(run_trials_parallel(d11(), heavy, state.range(0)));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_TrialsParallel)->Arg(20000)->Unit(benchmark::kMillisecond);

static void BM_Predecode(benchmark::State& state) {
    const Experiment& e = d11();
    std::vector<Syndrome> syndromes;
    for (std::int64_t i = 0; i < 1000; ++i)
        syndromes.push_back(syndrome_from_errors(e.graph(), inject_k_errors(e.graph(), static_cast<int>(state.range(0)),
                                                                            derive_seed(2, 0, static_cast<std::uint64_t>(i)))));
    size_t i = 0;
    for (auto _ : state)
        benchmark::DoNotOptimize(predecode(e.graph(), e.table(), syndromes[i++ % syndromes.size()]));
}
BENCHMARK(BM_Predecode)->Arg(8)->Arg(16)->Arg(24);

static void BM_BruteForce(benchmark::State& state) {
    const Experiment& e = d11();
    std::vector<int> nodes;
    for (int i = 0; i < state.range(0); ++i)
        nodes.push_back(i * 7);
    for (auto _ : state)
        benchmark::DoNotOptimize(brute_force_mwpm(nodes, e.table(), {.hw_cap = kOracleHwCap}));
}
BENCHMARK(BM_BruteForce)->Arg(6)->Arg(10)->Arg(14);

BENCHMARK_MAIN();
