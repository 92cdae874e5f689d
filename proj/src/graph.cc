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

#include "rtm/graph.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rtm {

double weight_from_probability(double p) {
    return -std::log(p);
}

DetectorGraph DetectorGraph::from_parts(
    int distance, int rounds, double p, std::vector<Detector> nodes, std::vector<Edge> edges) {
    DetectorGraph g;
    g.distance_ = distance;
    g.rounds_ = rounds;
    g.p_ = p;
    g.nodes_ = std::move(nodes);
    g.edges_ = std::move(edges);

    const int n = g.num_detectors();
    for (int i = 0; i < n; ++i) {
        if (g.nodes_[static_cast<size_t>(i)].id != i)
            throw std::invalid_argument("detector ids must be dense and ordered; got " +
                                        std::to_string(g.nodes_[static_cast<size_t>(i)].id) + " at position " +
                                        std::to_string(i));
    }

    std::vector<size_t> degree(static_cast<size_t>(n) + 1, 0);
    for (int e = 0; e < g.num_edges(); ++e) {
        const Edge& edge = g.edges_[static_cast<size_t>(e)];
        if (edge.id != e)
            throw std::invalid_argument("edge ids must be dense and ordered; got " + std::to_string(edge.id));
        if (edge.u < 0 || edge.u > n || edge.v < 0 || edge.v > n)
            throw std::invalid_argument("edge " + std::to_string(e) + " has an endpoint out of range");
        if (edge.u == edge.v)
            throw std::invalid_argument("edge " + std::to_string(e) + " is a self loop");
        if (!(edge.probability > 0 && edge.probability < 0.5))
            throw std::invalid_argument("edge " + std::to_string(e) + " probability must lie in (0, 0.5)");
        if (!(edge.weight > 0))
            throw std::invalid_argument("edge " + std::to_string(e) + " weight must be positive");
        ++degree[static_cast<size_t>(edge.u)];
        ++degree[static_cast<size_t>(edge.v)];
    }

    g.adj_offsets_.assign(static_cast<size_t>(n) + 2, 0);
    for (int v = 0; v <= n; ++v)
        g.adj_offsets_[static_cast<size_t>(v) + 1] = g.adj_offsets_[static_cast<size_t>(v)] + degree[static_cast<size_t>(v)];
    g.adj_edges_.resize(g.adj_offsets_.back());
    std::vector<size_t> fill(g.adj_offsets_.begin(), g.adj_offsets_.end() - 1);
    for (const Edge& edge : g.edges_) {
        g.adj_edges_[fill[static_cast<size_t>(edge.u)]++] = edge.id;
        g.adj_edges_[fill[static_cast<size_t>(edge.v)]++] = edge.id;
    }
    return g;
}

std::span<const int> DetectorGraph::incident(int node) const {
    auto b = adj_offsets_[static_cast<size_t>(node)];
    auto e = adj_offsets_[static_cast<size_t>(node) + 1];
    return {adj_edges_.data() + b, e - b};
}

int DetectorGraph::other_end(int edge_id, int node) const {
    const Edge& e = edge(edge_id);
    return e.u == node ? e.v : e.u;
}

bool DetectorGraph::is_connected() const {
    const int total = num_detectors() + 1;
    std::vector<char> seen(static_cast<size_t>(total), 0);
    std::vector<int> stack{boundary_id()};
    seen[static_cast<size_t>(boundary_id())] = 1;
    int reached = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int e : incident(v)) {
            int w = other_end(e, v);
            if (!seen[static_cast<size_t>(w)]) {
                seen[static_cast<size_t>(w)] = 1;
                ++reached;
                stack.push_back(w);
            }
        }
    }
    return reached == total;
}

namespace {

void check_code_parameters(int distance, int rounds) {
    if (distance < 3 || distance % 2 == 0)
        throw std::invalid_argument("distance must be an odd integer >= 3, got " + std::to_string(distance));
    if (rounds < 1)
        throw std::invalid_argument("rounds must be >= 1, got " + std::to_string(rounds));
}

bool is_z_plaquette(int distance, int i, int j) {
    if (((i + j) % 2 + 2) % 2 != 0)
        return false;
    bool col_inside = i >= 0 && i <= distance - 2;
    if (!col_inside)
        return false;
    if (j >= 0 && j <= distance - 2)
        return true;
    return j == -1 || j == distance - 1;
}

}  // namespace

int expected_detector_count(int distance, int rounds) {
    check_code_parameters(distance, rounds);
    return rounds * (distance * distance - 1) / 2;
}

int expected_edge_count(int distance, int rounds) {
    check_code_parameters(distance, rounds);
    return rounds * distance * distance + (rounds - 1) * (distance * distance - 1) / 2;
}

DetectorGraph build_decoding_graph(int distance, int rounds, double p) {
    check_code_parameters(distance, rounds);
    if (!(p > 0 && p < 0.5))
        throw std::invalid_argument("p must lie in (0, 0.5), got " + std::to_string(p));
    const int d = distance;

    // Plaquette index in one layer, keyed by lower-left corner.
    const int side = d + 1;
    std::vector<int> plaquette_at(static_cast<size_t>(side * side), -1);
    std::vector<std::pair<int, int>> corners;
    for (int j = -1; j <= d - 1; ++j) {
        for (int i = -1; i <= d - 1; ++i) {
            if (is_z_plaquette(d, i, j)) {
                plaquette_at[static_cast<size_t>((j + 1) * side + (i + 1))] = static_cast<int>(corners.size());
                corners.emplace_back(i, j);
            }
        }
    }
    const int per_round = static_cast<int>(corners.size());
    const int n = per_round * rounds;
    const int boundary = n;

    std::vector<Detector> nodes;
    nodes.reserve(static_cast<size_t>(n));
    for (int r = 0; r < rounds; ++r)
        for (int k = 0; k < per_round; ++k)
            nodes.push_back({r * per_round + k, corners[static_cast<size_t>(k)].first,
                             corners[static_cast<size_t>(k)].second, r});

    // Per data qubit, the Z plaquettes containing it (one or two).
    struct DataQubit {
        int x;
        int y;
        std::vector<int> plaquettes;
    };
    std::vector<DataQubit> data;
    for (int y = 0; y < d; ++y) {
        for (int x = 0; x < d; ++x) {
            DataQubit q{x, y, {}};
            for (int j = y - 1; j <= y; ++j)
                for (int i = x - 1; i <= x; ++i) {
                    if (i < -1 || j < -1 || i > d - 1 || j > d - 1)
                        continue;
                    int idx = plaquette_at[static_cast<size_t>((j + 1) * side + (i + 1))];
                    if (idx >= 0)
                        q.plaquettes.push_back(idx);
                }
            data.push_back(std::move(q));
        }
    }

    const double w = weight_from_probability(p);
    std::vector<Edge> edges;
    edges.reserve(static_cast<size_t>(expected_edge_count(distance, rounds)));
    auto add_edge = [&](int u, int v, bool obs) {
        int id = static_cast<int>(edges.size());
        edges.push_back({id, std::min(u, v), std::max(u, v), p, w, obs});
    };
    for (int r = 0; r < rounds; ++r) {
        const int base = r * per_round;
        for (const DataQubit& q : data) {
            if (q.plaquettes.size() == 2)
                add_edge(base + q.plaquettes[0], base + q.plaquettes[1], q.x == 0);
            else
                add_edge(base + q.plaquettes[0], boundary, q.x == 0);
        }
        if (r + 1 < rounds)
            for (int k = 0; k < per_round; ++k)
                add_edge(base + k, base + per_round + k, false);
    }

    return DetectorGraph::from_parts(distance, rounds, p, std::move(nodes), std::move(edges));
}

nlohmann::json graph_to_json(const DetectorGraph& graph) {
    auto file_id = [&](int v) { return graph.is_boundary(v) ? -1 : v; };
    nlohmann::json nodes = nlohmann::json::array();
    for (const Detector& d : graph.nodes())
        nodes.push_back({{"id", d.id}, {"x", d.x}, {"y", d.y}, {"round", d.round}});
    nlohmann::json edges = nlohmann::json::array();
    for (const Edge& e : graph.edges())
        edges.push_back({{"id", e.id},
                         {"u", file_id(e.u)},
                         {"v", file_id(e.v)},
                         {"prob", e.probability},
                         {"weight", e.weight},
                         {"obs", e.flips_observable}});
    return {{"distance", graph.distance()},
            {"rounds", graph.rounds()},
            {"p", graph.p()},
            {"nodes", std::move(nodes)},
            {"edges", std::move(edges)}};
}

DetectorGraph graph_from_json(const nlohmann::json& doc) {
    std::vector<Detector> nodes;
    for (const auto& jn : doc.at("nodes"))
        nodes.push_back({jn.at("id").get<int>(), jn.at("x").get<int>(), jn.at("y").get<int>(),
                         jn.at("round").get<int>()});
    const int boundary = static_cast<int>(nodes.size());
    auto internal_id = [&](int v) { return v == -1 ? boundary : v; };
    std::vector<Edge> edges;
    for (const auto& je : doc.at("edges")) {
        Edge e;
        e.id = je.at("id").get<int>();
        e.u = internal_id(je.at("u").get<int>());
        e.v = internal_id(je.at("v").get<int>());
        if (e.u == boundary)
            std::swap(e.u, e.v);
        e.probability = je.at("prob").get<double>();
        e.weight = je.contains("weight") ? je.at("weight").get<double>() : weight_from_probability(e.probability);
        e.flips_observable = je.at("obs").get<bool>();
        edges.push_back(e);
    }
    return DetectorGraph::from_parts(doc.at("distance").get<int>(), doc.at("rounds").get<int>(),
                                     doc.at("p").get<double>(), std::move(nodes), std::move(edges));
}

}  // namespace rtm
