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

#include "rtm/noise.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace rtm {

std::uint64_t Rng::below(std::uint64_t bound) {
    // Reject the top partial block so every residue is equally likely.
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t x;
    do {
        x = engine_();
    } while (x >= limit);
    return x % bound;
}

ErrorSet sample_iid(const DetectorGraph& graph, std::optional<double> p_override, std::uint64_t seed) {
    if (p_override && !(*p_override >= 0 && *p_override < 0.5))
        throw std::invalid_argument("p_override must lie in [0, 0.5)");
    ErrorSet out;
    if (p_override && *p_override == 0)
        return out;
    Rng rng(seed);
    for (const Edge& e : graph.edges()) {
        double p = p_override ? *p_override : e.probability;
        if (rng.uniform() < p)
            out.edge_ids.push_back(e.id);
    }
    return out;
}

ErrorSet inject_k_errors(const DetectorGraph& graph, int k, std::uint64_t seed) {
    const int n = graph.num_edges();
    if (k < 0 || k > n)
        throw std::invalid_argument("inject_k_errors: k=" + std::to_string(k) + " outside [0, " +
                                    std::to_string(n) + "]");
    Rng rng(seed);
    std::vector<char> chosen(static_cast<size_t>(n), 0);
    ErrorSet out;
    out.edge_ids.reserve(static_cast<size_t>(k));
    for (int j = n - k; j < n; ++j) {
        int t = static_cast<int>(rng.below(static_cast<std::uint64_t>(j) + 1));
        int pick = chosen[static_cast<size_t>(t)] ? j : t;
        chosen[static_cast<size_t>(pick)] = 1;
        out.edge_ids.push_back(pick);
    }
    std::sort(out.edge_ids.begin(), out.edge_ids.end());
    return out;
}

Syndrome syndrome_from_errors(const DetectorGraph& graph, const ErrorSet& errors) {
    std::vector<char> parity(static_cast<size_t>(graph.num_detectors()) + 1, 0);
    Syndrome s;
    for (int id : errors.edge_ids) {
        if (id < 0 || id >= graph.num_edges())
            throw std::invalid_argument("syndrome_from_errors: invalid edge id " + std::to_string(id));
        const Edge& e = graph.edge(id);
        parity[static_cast<size_t>(e.u)] ^= 1;
        parity[static_cast<size_t>(e.v)] ^= 1;
        if (e.flips_observable)
            s.true_observable = !s.true_observable;
    }
    for (int v = 0; v < graph.num_detectors(); ++v)
        if (parity[static_cast<size_t>(v)])
            s.flipped.push_back(v);
    return s;
}

double log_occurrence_probability(int k, int n_edges, double p) {
    if (k < 0 || k > n_edges)
        throw std::invalid_argument("occurrence_probability: k outside [0, n_edges]");
    if (p == 0)
        return k == 0 ? 0.0 : -std::numeric_limits<double>::infinity();
    double log_choose = std::lgamma(n_edges + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n_edges - k + 1.0);
    return log_choose + k * std::log(p) + (n_edges - k) * std::log1p(-p);
}

double occurrence_probability(int k, int n_edges, double p) {
    return std::exp(log_occurrence_probability(k, n_edges, p));
}

double occurrence_tail(int k_max, int n_edges, double p) {
    double tail = 0;
    // Summed from the far end so the small terms accumulate first.
    for (int k = n_edges; k > std::max(k_max, -1); --k)
        tail += occurrence_probability(k, n_edges, p);
    return tail;
}

nlohmann::json sample_to_json(const ErrorSet& errors, const Syndrome& syndrome) {
    return {{"errors", errors.edge_ids}, {"flipped", syndrome.flipped}, {"obs", syndrome.true_observable ? 1 : 0}};
}

Syndrome syndrome_from_json(const nlohmann::json& line) {
    Syndrome s;
    s.flipped = line.at("flipped").get<std::vector<int>>();
    std::sort(s.flipped.begin(), s.flipped.end());
    s.flipped.erase(std::unique(s.flipped.begin(), s.flipped.end()), s.flipped.end());
    if (line.contains("obs"))
        s.true_observable = line.at("obs").get<int>() != 0;
    return s;
}

}  // namespace rtm
