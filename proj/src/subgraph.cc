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

#include "rtm/subgraph.h"

#include <algorithm>
#include <stdexcept>

namespace rtm {

DecodingSubgraph::DecodingSubgraph(const DetectorGraph& graph, std::span<const int> flipped)
    : nodes_(flipped.begin(), flipped.end()) {
    std::sort(nodes_.begin(), nodes_.end());
    nodes_.erase(std::unique(nodes_.begin(), nodes_.end()), nodes_.end());
    for (int v : nodes_)
        if (v < 0 || v >= graph.num_detectors())
            throw std::invalid_argument("DecodingSubgraph: " + std::to_string(v) + " is not a detector id");

    for (size_t a = 0; a < nodes_.size(); ++a) {
        const int u = nodes_[a];
        for (int e : graph.incident(u)) {
            const int v = graph.other_end(e, u);
            if (v <= u || graph.is_boundary(v))
                continue;
            int b = local(v);
            if (b >= 0)
                edges_.push_back({e, static_cast<int>(a), b});
        }
    }
    std::sort(edges_.begin(), edges_.end(), [](const SubEdge& x, const SubEdge& y) { return x.id < y.id; });
    recompute_stats();
}

int DecodingSubgraph::local(int detector) const {
    auto it = std::lower_bound(nodes_.begin(), nodes_.end(), detector);
    if (it == nodes_.end() || *it != detector)
        return -1;
    return static_cast<int>(it - nodes_.begin());
}

size_t DecodingSubgraph::checked_local(int detector) const {
    int i = local(detector);
    if (i < 0)
        throw std::out_of_range("DecodingSubgraph: detector " + std::to_string(detector) + " not in subgraph");
    return static_cast<size_t>(i);
}

void DecodingSubgraph::recompute_stats() {
    deg_.assign(nodes_.size(), 0);
    dep_.assign(nodes_.size(), 0);
    for (const SubEdge& e : edges_) {
        ++deg_[static_cast<size_t>(e.a)];
        ++deg_[static_cast<size_t>(e.b)];
    }
    for (const SubEdge& e : edges_) {
        if (deg_[static_cast<size_t>(e.b)] == 1)
            ++dep_[static_cast<size_t>(e.a)];
        if (deg_[static_cast<size_t>(e.a)] == 1)
            ++dep_[static_cast<size_t>(e.b)];
    }
}

std::vector<int> DecodingSubgraph::singletons() const {
    std::vector<int> out;
    for (size_t i = 0; i < nodes_.size(); ++i)
        if (deg_[i] == 0)
            out.push_back(nodes_[i]);
    return out;
}

int DecodingSubgraph::singleton_count() const {
    return static_cast<int>(std::count(deg_.begin(), deg_.end(), 0));
}

bool DecodingSubgraph::creates_singleton(const SubEdge& e) const {
    const auto a = static_cast<size_t>(e.a);
    const auto b = static_cast<size_t>(e.b);
    int stranded_by_a = dep_[a] - (deg_[b] == 1 ? 1 : 0);
    int stranded_by_b = dep_[b] - (deg_[a] == 1 ? 1 : 0);
    return stranded_by_a > 0 || stranded_by_b > 0;
}

bool DecodingSubgraph::creates_singleton(int edge_id) const {
    for (const SubEdge& e : edges_)
        if (e.id == edge_id)
            return creates_singleton(e);
    return false;
}

std::vector<DecodingSubgraph::SubEdge> DecodingSubgraph::isolated_pairs() const {
    std::vector<SubEdge> out;
    for (const SubEdge& e : edges_)
        if (deg_[static_cast<size_t>(e.a)] == 1 && deg_[static_cast<size_t>(e.b)] == 1)
            out.push_back(e);
    return out;
}

void DecodingSubgraph::remove_pair(int a, int b) {
    const int la = local(a);
    const int lb = local(b);
    if (la < 0 || lb < 0 || la == lb)
        throw std::invalid_argument("remove_pair: both detectors must be distinct members of the subgraph");

    std::vector<int> remap(nodes_.size(), -1);
    std::vector<int> kept;
    kept.reserve(nodes_.size() - 2);
    for (size_t i = 0; i < nodes_.size(); ++i) {
        if (static_cast<int>(i) == la || static_cast<int>(i) == lb)
            continue;
        remap[i] = static_cast<int>(kept.size());
        kept.push_back(nodes_[i]);
    }
    std::vector<SubEdge> kept_edges;
    kept_edges.reserve(edges_.size());
    for (const SubEdge& e : edges_) {
        int na = remap[static_cast<size_t>(e.a)];
        int nb = remap[static_cast<size_t>(e.b)];
        if (na >= 0 && nb >= 0)
            kept_edges.push_back({e.id, na, nb});
    }
    nodes_ = std::move(kept);
    edges_ = std::move(kept_edges);
    recompute_stats();
}

bool DecodingSubgraph::consistent() const {
    DecodingSubgraph copy = *this;
    copy.recompute_stats();
    return copy.deg_ == deg_ && copy.dep_ == dep_;
}

}  // namespace rtm
