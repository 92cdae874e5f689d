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

#ifndef RTM_TESTS_TEST_UTIL_H
#define RTM_TESTS_TEST_UTIL_H

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <tuple>
#include <vector>

#include "rtm/graph.h"
#include "rtm/noise.h"
#include "rtm/path_table.h"

namespace rtm::testing {

/// Endpoint -1 stands for the boundary.
struct HandEdge {
    int u;
    int v;
    double p;
    bool obs = false;
};

inline DetectorGraph make_graph(int n, const std::vector<HandEdge>& spec) {
    std::vector<Detector> nodes;
    for (int i = 0; i < n; ++i)
        nodes.push_back({i, i, 0, 0});
    std::vector<Edge> edges;
    for (const HandEdge& h : spec) {
        int u = h.u < 0 ? n : h.u;
        int v = h.v < 0 ? n : h.v;
        if (u > v)
            std::swap(u, v);
        edges.push_back({static_cast<int>(edges.size()), u, v, h.p, -std::log(h.p), h.obs});
    }
    return DetectorGraph::from_parts(3, 1, spec.empty() ? 0.1 : spec.front().p, nodes, edges);
}

/// Bellman-Ford distances over detectors plus the boundary (index n).
/// `through_boundary` controls whether routes may pass the boundary.
inline std::vector<double> bellman_ford(const DetectorGraph& g, int source, bool through_boundary) {
    const int n = g.num_detectors();
    std::vector<double> dist(static_cast<size_t>(n) + 1, std::numeric_limits<double>::infinity());
    dist[static_cast<size_t>(source)] = 0;
    for (int it = 0; it <= n; ++it) {
        bool changed = false;
        for (const Edge& e : g.edges()) {
            for (auto [a, b] : {std::pair{e.u, e.v}, std::pair{e.v, e.u}}) {
                if (!through_boundary && a == n && source != n)
                    continue;
                double cand = dist[static_cast<size_t>(a)] + e.weight;
                if (cand < dist[static_cast<size_t>(b)] - 1e-15) {
                    dist[static_cast<size_t>(b)] = cand;
                    changed = true;
                }
            }
        }
        if (!changed)
            break;
    }
    return dist;
}

/// Minimum matching weight by dynamic programming over subsets. Written
/// independently of the enumerator under test; pairs use `pair_w`,
/// boundary matches use `bnd_w`.
template <typename PairW, typename BndW>
double subset_dp_min_weight(int m, PairW pair_w, BndW bnd_w) {
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> best(size_t{1} << m, inf);
    best[0] = 0;
    for (size_t mask = 1; mask < best.size(); ++mask) {
        int i = std::countr_zero(mask);
        size_t rest = mask & ~(size_t{1} << i);
        double v = best[rest] + bnd_w(i);
        for (int j = i + 1; j < m; ++j)
            if (rest & (size_t{1} << j))
                v = std::min(v, best[rest & ~(size_t{1} << j)] + pair_w(i, j));
        best[mask] = v;
    }
    return best.back();
}

inline double table_dp_weight(const PathTable& table, const std::vector<int>& flipped) {
    return subset_dp_min_weight(
        static_cast<int>(flipped.size()),
        [&](int i, int j) { return table.weight(flipped[static_cast<size_t>(i)], flipped[static_cast<size_t>(j)]); },
        [&](int i) { return table.boundary_weight(flipped[static_cast<size_t>(i)]); });
}

/// Detectors flipped an odd number of times by `edges`.
inline std::vector<int> boundary_of(const DetectorGraph& g, const std::vector<int>& edges) {
    std::vector<int> count(static_cast<size_t>(g.num_detectors()) + 1, 0);
    for (int id : edges) {
        count[static_cast<size_t>(g.edge(id).u)] ^= 1;
        count[static_cast<size_t>(g.edge(id).v)] ^= 1;
    }
    std::vector<int> out;
    for (int v = 0; v < g.num_detectors(); ++v)
        if (count[static_cast<size_t>(v)])
            out.push_back(v);
    return out;
}

}  // namespace rtm::testing

#endif  // RTM_TESTS_TEST_UTIL_H
