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

#include "rtm/predecoder.h"

#include <algorithm>

namespace rtm {

std::string_view step_name(Step step) {
    switch (step) {
        case Step::kIsolated:
            return "S1";
        case Step::kSafeDegreeOne:
            return "S2_1";
        case Step::kSafe:
            return "S2_2";
        case Step::kSingletonPath:
            return "S3";
        case Step::kRiskyDegreeOne:
            return "S4_1";
        case Step::kRisky:
            return "S4_2";
        case Step::kGreedy:
            return "G";
    }
    return "?";
}

std::optional<Step> PredecodeResult::deepest_step() const {
    std::optional<Step> deepest;
    for (const Prematch& m : prematches)
        if (!deepest || m.step > *deepest)
            deepest = m.step;
    return deepest;
}

namespace {

Prematch edge_prematch(const DetectorGraph& graph, int edge_id, Step step) {
    const Edge& e = graph.edge(edge_id);
    return {e.u, e.v, step, {edge_id}, e.weight};
}

void offer(std::optional<int>& reg, const DetectorGraph& graph, int edge_id) {
    if (!reg || graph.edge(edge_id).weight < graph.edge(*reg).weight)
        reg = edge_id;
}

}  // namespace

CandidateRegisters scan_candidates(const DecodingSubgraph& sub, const DetectorGraph& graph) {
    CandidateRegisters regs;
    for (const auto& e : sub.edges()) {
        bool degree_one = std::min(sub.degree_at(e.a), sub.degree_at(e.b)) == 1;
        if (!sub.creates_singleton(e))
            offer(degree_one ? regs.safe_degree_one : regs.safe, graph, e.id);
        else
            offer(degree_one ? regs.risky_degree_one : regs.risky, graph, e.id);
    }
    return regs;
}

std::vector<Prematch> match_isolated_pairs(DecodingSubgraph& sub, const DetectorGraph& graph) {
    std::vector<Prematch> out;
    for (const auto& e : sub.isolated_pairs())
        out.push_back(edge_prematch(graph, e.id, Step::kIsolated));
    for (const Prematch& m : out)
        sub.remove_pair(m.a, m.b);
    return out;
}

std::optional<Prematch> step3_singleton_path(const DecodingSubgraph& sub, const DetectorGraph& graph,
                                             const PathTable& table, std::int64_t* paths_examined) {
    std::int64_t examined = 0;
    std::optional<std::pair<int, int>> best;
    auto rank = [&](int s, int t) {
        return table.quantized() ? static_cast<double>(table.category(s, t)) : table.weight(s, t);
    };
    const auto nodes = sub.nodes();
    for (size_t si = 0; si < nodes.size(); ++si) {
        if (sub.degree_at(static_cast<int>(si)) != 0)
            continue;
        const int s = nodes[si];
        for (size_t ti = 0; ti < nodes.size(); ++ti) {
            if (ti == si)
                continue;
            ++examined;
            const int t = nodes[ti];
            // The singleton itself strands nobody; only the partner's
            // degree-1 neighbours matter.
            if (sub.dependents_at(static_cast<int>(ti)) > 0)
                continue;
            if (table.weight(s, t) == kUnreachable)
                continue;
            if (!best || rank(s, t) < rank(best->first, best->second))
                best = std::pair{s, t};
        }
    }
    if (paths_examined)
        *paths_examined = examined;
    if (!best)
        return std::nullopt;
    auto [s, t] = *best;
    return Prematch{s, t, Step::kSingletonPath, reconstruct_path(graph, table, s, t), table.weight(s, t)};
}

PredecodeResult predecode(const DetectorGraph& graph, const PathTable& table, const Syndrome& syndrome,
                          const PredecoderConfig& config) {
    PredecodeResult result;
    result.residual = syndrome;
    const TimingConfig& timing = config.timing;
    const std::int64_t budget = timing.budget_cycles();

    if (syndrome.hamming_weight() <= config.bypass_hw && timing.fits(0, syndrome.hamming_weight()))
        return result;

    DecodingSubgraph sub(graph, syndrome.flipped);
    auto abort = [&] {
        result.aborted = true;
        result.residual.flipped.assign(sub.nodes().begin(), sub.nodes().end());
        return result;
    };

    while (true) {
        const int hw = sub.hamming_weight();
        if (hw <= config.hw_target) {
            if (timing.fits(result.cycles, hw))
                break;
            if (!config.adaptive || hw == 0)
                return abort();
        }
        const auto scan_cost = static_cast<std::int64_t>(sub.edges().size());

        if (!sub.isolated_pairs().empty()) {
            if (result.cycles + scan_cost > budget)
                return abort();
            for (Prematch& m : match_isolated_pairs(sub, graph))
                result.prematches.push_back(std::move(m));
            result.cycles += scan_cost;
            ++result.rounds_executed;
            continue;
        }

        CandidateRegisters regs = scan_candidates(sub, graph);
        std::int64_t round_cost = scan_cost;
        std::optional<Prematch> choice;
        if (regs.safe_degree_one) {
            choice = edge_prematch(graph, *regs.safe_degree_one, Step::kSafeDegreeOne);
        } else if (regs.safe) {
            choice = edge_prematch(graph, *regs.safe, Step::kSafe);
        } else {
            if (sub.singleton_count() > 0) {
                std::int64_t paths = 0;
                choice = step3_singleton_path(sub, graph, table, &paths);
                round_cost = std::max(paths, scan_cost);
            }
            if (!choice && regs.risky_degree_one)
                choice = edge_prematch(graph, *regs.risky_degree_one, Step::kRiskyDegreeOne);
            else if (!choice && regs.risky)
                choice = edge_prematch(graph, *regs.risky, Step::kRisky);
        }
        if (!choice || result.cycles + round_cost > budget)
            return abort();
        sub.remove_pair(choice->a, choice->b);
        result.prematches.push_back(std::move(*choice));
        result.cycles += round_cost;
        ++result.rounds_executed;
    }

    result.residual.flipped.assign(sub.nodes().begin(), sub.nodes().end());
    return result;
}

std::vector<int> apply_prematches(const DetectorGraph& graph, const Syndrome& syndrome,
                                  const std::vector<Prematch>& prematches) {
    std::vector<char> flipped(static_cast<size_t>(graph.num_detectors()) + 1, 0);
    for (int v : syndrome.flipped)
        flipped[static_cast<size_t>(v)] = 1;
    for (const Prematch& m : prematches)
        for (int id : m.correction_edges) {
            const Edge& e = graph.edge(id);
            flipped[static_cast<size_t>(e.u)] ^= 1;
            flipped[static_cast<size_t>(e.v)] ^= 1;
        }
    std::vector<int> out;
    for (int v = 0; v < graph.num_detectors(); ++v)
        if (flipped[static_cast<size_t>(v)])
            out.push_back(v);
    return out;
}

nlohmann::json predecode_to_json(const PredecodeResult& result) {
    nlohmann::json matches = nlohmann::json::array();
    for (const Prematch& m : result.prematches)
        matches.push_back({{"a", m.a},
                           {"b", m.b},
                           {"step", step_name(m.step)},
                           {"weight", m.weight},
                           {"edges", m.correction_edges}});
    return {{"prematches", std::move(matches)},
            {"residual", result.residual.flipped},
            {"cycles", result.cycles},
            {"aborted", result.aborted}};
}

}  // namespace rtm
