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

#include "rtm/main_decoder.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rtm {

std::int64_t matchings_for_latency(int hw) {
    int m = hw + (hw % 2);
    std::int64_t count = 1;
    for (int k = m - 1; k > 1; k -= 2)
        count *= k;
    return count;
}

namespace {

class Enumerator {
  public:
    Enumerator(std::span<const int> nodes, const PathTable& table, const MwpmOptions& options)
        : m_(static_cast<int>(nodes.size())), prune_(options.prune) {
        pair_w_.resize(static_cast<size_t>(m_ * m_));
        boundary_w_.resize(static_cast<size_t>(m_));
        for (int i = 0; i < m_; ++i) {
            boundary_w_[static_cast<size_t>(i)] =
                options.allow_boundary ? table.boundary_weight(nodes[static_cast<size_t>(i)]) : kUnreachable;
            for (int j = 0; j < m_; ++j)
                pair_w_[static_cast<size_t>(i * m_ + j)] =
                    i == j ? 0.0 : table.weight(nodes[static_cast<size_t>(i)], nodes[static_cast<size_t>(j)]);
        }
        partner_.assign(static_cast<size_t>(m_), -2);
    }

    void run() { search(0, 0.0); }

    bool found() const { return found_; }
    double best_weight() const { return best_weight_; }
    const std::vector<int>& best_partner() const { return best_partner_; }
    std::int64_t enumerated() const { return enumerated_; }

  private:
    static constexpr int kFree = -2;
    static constexpr int kToBoundary = -1;

    bool improves(double total) const {
        return !found_ || total < best_weight_ - 1e-12 * std::max(1.0, best_weight_);
    }

    void search(int start, double partial) {
        if (prune_ && !improves(partial))
            return;
        int i = start;
        while (i < m_ && partner_[static_cast<size_t>(i)] != kFree)
            ++i;
        if (i == m_) {
            ++enumerated_;
            if (improves(partial)) {
                found_ = true;
                best_weight_ = partial;
                best_partner_ = partner_;
            }
            return;
        }
        for (int j = i + 1; j < m_; ++j) {
            if (partner_[static_cast<size_t>(j)] != kFree)
                continue;
            double w = pair_w_[static_cast<size_t>(i * m_ + j)];
            if (w == kUnreachable)
                continue;
            partner_[static_cast<size_t>(i)] = j;
            partner_[static_cast<size_t>(j)] = i;
            search(i + 1, partial + w);
            partner_[static_cast<size_t>(i)] = kFree;
            partner_[static_cast<size_t>(j)] = kFree;
        }
        double bw = boundary_w_[static_cast<size_t>(i)];
        if (bw != kUnreachable) {
            partner_[static_cast<size_t>(i)] = kToBoundary;
            search(i + 1, partial + bw);
            partner_[static_cast<size_t>(i)] = kFree;
        }
    }

    int m_;
    bool prune_;
    std::vector<double> pair_w_;
    std::vector<double> boundary_w_;
    std::vector<int> partner_;
    std::vector<int> best_partner_;
    double best_weight_ = 0;
    bool found_ = false;
    std::int64_t enumerated_ = 0;
};

}  // namespace

MatchingSet brute_force_mwpm(std::span<const int> flipped, const PathTable& table, const MwpmOptions& options) {
    if (static_cast<int>(flipped.size()) > options.hw_cap)
        throw std::invalid_argument("brute_force_mwpm: Hamming weight " + std::to_string(flipped.size()) +
                                    " exceeds cap " + std::to_string(options.hw_cap));
    std::vector<int> nodes(flipped.begin(), flipped.end());
    std::sort(nodes.begin(), nodes.end());

    Enumerator search(nodes, table, options);
    search.run();
    if (!search.found())
        throw std::invalid_argument("brute_force_mwpm: no perfect matching exists");

    MatchingSet out;
    out.total_weight = search.best_weight();
    out.enumerated = search.enumerated();
    const auto& partner = search.best_partner();
    for (size_t i = 0; i < nodes.size(); ++i) {
        if (partner[i] == -1)
            out.boundary_matches.push_back(nodes[i]);
        else if (static_cast<size_t>(partner[i]) > i)
            out.pairs.emplace_back(nodes[i], nodes[static_cast<size_t>(partner[i])]);
    }
    return out;
}

std::vector<int> xor_edges(std::vector<int> edges) {
    std::sort(edges.begin(), edges.end());
    std::vector<int> out;
    for (size_t i = 0; i < edges.size();) {
        size_t j = i;
        while (j < edges.size() && edges[j] == edges[i])
            ++j;
        if ((j - i) % 2 == 1)
            out.push_back(edges[i]);
        i = j;
    }
    return out;
}

bool observable_parity(const DetectorGraph& graph, std::span<const int> edges) {
    bool parity = false;
    for (int id : edges)
        if (graph.edge(id).flips_observable)
            parity = !parity;
    return parity;
}

void attach_corrections(MatchingSet& matching, const DetectorGraph& graph, const PathTable& table) {
    std::vector<int> all;
    for (auto [a, b] : matching.pairs) {
        auto path = reconstruct_path(graph, table, a, b);
        all.insert(all.end(), path.begin(), path.end());
    }
    for (int v : matching.boundary_matches) {
        auto path = reconstruct_boundary_path(graph, table, v);
        all.insert(all.end(), path.begin(), path.end());
    }
    matching.correction_edges = xor_edges(std::move(all));
}

DecodeOutcome decode(const DetectorGraph& graph, const PathTable& table, const Syndrome& syndrome,
                     const std::optional<PredecodeResult>& predecode, const DecoderConfig& config) {
    DecodeOutcome out;
    const std::vector<int>* to_match = &syndrome.flipped;
    if (predecode) {
        out.prematches = predecode->prematches;
        out.predecode_cycles = predecode->cycles;
        if (predecode->aborted) {
            out.aborted = true;
            out.logical_failure = true;
            for (const Prematch& m : out.prematches)
                out.total_weight += m.weight;
            return out;
        }
        to_match = &predecode->residual.flipped;
    }
    if (static_cast<int>(to_match->size()) > config.hw_cap)
        throw std::invalid_argument("decode: Hamming weight " + std::to_string(to_match->size()) +
                                    " exceeds main decoder cap " + std::to_string(config.hw_cap));

    out.matching = brute_force_mwpm(*to_match, table, {.hw_cap = config.hw_cap});
    attach_corrections(out.matching, graph, table);
    out.main_cycles = config.main_latency.cycles(static_cast<int>(to_match->size()));

    std::vector<int> all = out.matching.correction_edges;
    out.total_weight = out.matching.total_weight;
    for (const Prematch& m : out.prematches) {
        all.insert(all.end(), m.correction_edges.begin(), m.correction_edges.end());
        out.total_weight += m.weight;
    }
    out.correction_edges = xor_edges(std::move(all));
    out.predicted_observable = observable_parity(graph, out.correction_edges);
    out.logical_failure = out.predicted_observable != syndrome.true_observable;
    return out;
}

nlohmann::json outcome_to_json(const DecodeOutcome& outcome) {
    nlohmann::json pairs = nlohmann::json::array();
    for (const Prematch& m : outcome.prematches)
        pairs.push_back({m.a, m.b});
    for (auto [a, b] : outcome.matching.pairs)
        pairs.push_back({a, b});
    return {{"pairs", std::move(pairs)},
            {"boundary", outcome.matching.boundary_matches},
            {"weight", outcome.total_weight},
            {"failure", outcome.logical_failure},
            {"cycles_total", outcome.cycles_total()},
            {"aborted", outcome.aborted}};
}

}  // namespace rtm
