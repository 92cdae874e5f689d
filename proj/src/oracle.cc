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

#include "rtm/oracle.h"

#include <algorithm>
#include <sstream>

namespace rtm {

DecodeOutcome oracle_mwpm(const DetectorGraph& graph, const PathTable& table, const Syndrome& syndrome) {
    DecoderConfig config;
    config.hw_cap = kOracleHwCap;
    return decode(graph, table, syndrome, std::nullopt, config);
}

PredecodeResult greedy_baseline(const DetectorGraph& graph, const Syndrome& syndrome,
                                const PredecoderConfig& config) {
    PredecodeResult result;
    result.residual = syndrome;
    const TimingConfig& timing = config.timing;
    const std::int64_t budget = timing.budget_cycles();
    if (syndrome.hamming_weight() <= config.bypass_hw && timing.fits(0, syndrome.hamming_weight()))
        return result;

    DecodingSubgraph sub(graph, syndrome.flipped);
    while (true) {
        const int hw = sub.hamming_weight();
        if (timing.fits(result.cycles, hw) && hw <= config.hw_target)
            break;
        if (sub.edges().empty() || (hw <= config.hw_target && !config.adaptive)) {
            result.aborted = true;
            break;
        }
        const auto cost = static_cast<std::int64_t>(sub.edges().size());
        if (result.cycles + cost > budget) {
            result.aborted = true;
            break;
        }
        std::vector<DecodingSubgraph::SubEdge> order(sub.edges().begin(), sub.edges().end());
        std::stable_sort(order.begin(), order.end(), [&](const auto& x, const auto& y) {
            return graph.edge(x.id).weight < graph.edge(y.id).weight;
        });
        std::vector<char> taken(static_cast<size_t>(hw), 0);
        std::vector<Prematch> round;
        for (const auto& e : order) {
            if (taken[static_cast<size_t>(e.a)] || taken[static_cast<size_t>(e.b)])
                continue;
            taken[static_cast<size_t>(e.a)] = taken[static_cast<size_t>(e.b)] = 1;
            const Edge& ge = graph.edge(e.id);
            round.push_back({ge.u, ge.v, Step::kGreedy, {e.id}, ge.weight});
        }
        for (Prematch& m : round) {
            sub.remove_pair(m.a, m.b);
            result.prematches.push_back(std::move(m));
        }
        result.cycles += cost;
        ++result.rounds_executed;
    }
    result.residual.flipped.assign(sub.nodes().begin(), sub.nodes().end());
    return result;
}

void add_chain_lengths(ChainHistogram& hist, const PathTable& table, const MatchingSet& matching) {
    for (auto [a, b] : matching.pairs)
        ++hist[table.hops(a, b)];
    for (int v : matching.boundary_matches)
        ++hist[table.boundary_hops(v)];
}

ChainHistogram chain_length_histogram(const DetectorGraph& graph, const PathTable& table,
                                      std::span<const Syndrome> syndromes) {
    ChainHistogram hist;
    for (const Syndrome& s : syndromes) {
        DecodeOutcome out = oracle_mwpm(graph, table, s);
        add_chain_lengths(hist, table, out.matching);
    }
    return hist;
}

std::string histogram_csv(const ChainHistogram& hist) {
    std::int64_t total = 0;
    for (auto [hops, count] : hist)
        total += count;
    std::ostringstream out;
    out << "hops,count,frequency\n";
    for (auto [hops, count] : hist)
        out << hops << ',' << count << ',' << static_cast<double>(count) / static_cast<double>(total) << '\n';
    return out.str();
}

}  // namespace rtm
