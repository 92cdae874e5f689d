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

#include "rtm/path_table.h"

#include <algorithm>
#include <functional>
#include <queue>
#include <stdexcept>

namespace rtm {

class PathTableBuilder {
  public:
    explicit PathTableBuilder(const DetectorGraph& graph) : graph_(graph) {
        const int n = graph.num_detectors();
        table_.n_ = n;
        const size_t cells = static_cast<size_t>(n) * static_cast<size_t>(n);
        table_.weight_.assign(cells, kUnreachable);
        table_.hops_.assign(cells, 0);
        table_.pred_edge_.assign(cells, -1);
    }

    // Dijkstra from `source` over detectors only. Writes row `source`.
    void fill_row(int source) {
        const int n = graph_.num_detectors();
        const size_t row = static_cast<size_t>(source) * static_cast<size_t>(n);
        double* dist = table_.weight_.data() + row;
        std::uint16_t* hops = table_.hops_.data() + row;
        std::int32_t* pred = table_.pred_edge_.data() + row;

        using Item = std::pair<double, int>;
        std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
        dist[source] = 0;
        queue.emplace(0.0, source);
        while (!queue.empty()) {
            auto [du, u] = queue.top();
            queue.pop();
            if (du > dist[u])
                continue;
            for (int e : graph_.incident(u)) {
                int v = graph_.other_end(e, u);
                if (graph_.is_boundary(v))
                    continue;
                double nd = du + graph_.edge(e).weight;
                if (nd < dist[v]) {
                    dist[v] = nd;
                    hops[v] = static_cast<std::uint16_t>(hops[u] + 1);
                    pred[v] = e;
                    queue.emplace(nd, v);
                }
            }
        }
    }

    void fill_boundary() {
        const int n = graph_.num_detectors();
        const int b = graph_.boundary_id();
        std::vector<double> dist(static_cast<size_t>(n) + 1, kUnreachable);
        std::vector<int> hops(static_cast<size_t>(n) + 1, 0);
        std::vector<int> next(static_cast<size_t>(n) + 1, -1);
        using Item = std::pair<double, int>;
        std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
        dist[static_cast<size_t>(b)] = 0;
        queue.emplace(0.0, b);
        while (!queue.empty()) {
            auto [du, u] = queue.top();
            queue.pop();
            if (du > dist[static_cast<size_t>(u)])
                continue;
            for (int e : graph_.incident(u)) {
                int v = graph_.other_end(e, u);
                double nd = du + graph_.edge(e).weight;
                if (nd < dist[static_cast<size_t>(v)]) {
                    dist[static_cast<size_t>(v)] = nd;
                    hops[static_cast<size_t>(v)] = hops[static_cast<size_t>(u)] + 1;
                    next[static_cast<size_t>(v)] = e;
                    queue.emplace(nd, v);
                }
            }
        }
        dist.pop_back();
        hops.pop_back();
        next.pop_back();
        table_.boundary_weight_ = std::move(dist);
        table_.boundary_hops_ = std::move(hops);
        table_.boundary_next_edge_ = std::move(next);
    }

    PathTable take() { return std::move(table_); }

  private:
    const DetectorGraph& graph_;
    PathTable table_;
};

PathTable build_path_table(const DetectorGraph& graph) {
    PathTableBuilder builder(graph);
    const int n = graph.num_detectors();
#pragma omp parallel for schedule(dynamic, 8)
    for (int s = 0; s < n; ++s)
        builder.fill_row(s);
    builder.fill_boundary();
    return builder.take();
}

PathTable build_path_table_serial(const DetectorGraph& graph) {
    PathTableBuilder builder(graph);
    for (int s = 0; s < graph.num_detectors(); ++s)
        builder.fill_row(s);
    builder.fill_boundary();
    return builder.take();
}

void PathTable::enable_quantization() {
    std::vector<double> finite;
    finite.reserve(static_cast<size_t>(n_) * static_cast<size_t>(n_) / 2);
    for (int i = 0; i < n_; ++i)
        for (int j = i + 1; j < n_; ++j)
            if (weight(i, j) != kUnreachable)
                finite.push_back(weight(i, j));
    category_bounds_.clear();
    if (!finite.empty()) {
        std::sort(finite.begin(), finite.end());
        for (int q = 1; q <= 3; ++q)
            category_bounds_.push_back(finite[(finite.size() - 1) * static_cast<size_t>(q) / 4]);
    }
    category_.assign(weight_.size(), 0);
    for (size_t c = 0; c < weight_.size(); ++c) {
        std::uint8_t cat = 0;
        for (double bound : category_bounds_)
            if (weight_[c] > bound)
                ++cat;
        category_[c] = cat;
    }
}

std::vector<int> reconstruct_path(const DetectorGraph& graph, const PathTable& table, int i, int j) {
    const int n = table.size();
    if (i < 0 || i >= n || j < 0 || j >= n)
        throw std::invalid_argument("reconstruct_path: endpoints must be detector ids");
    if (i == j)
        throw std::invalid_argument("reconstruct_path: endpoints must differ");
    if (table.weight(i, j) == kUnreachable)
        throw std::logic_error("reconstruct_path: detector " + std::to_string(j) + " unreachable from " +
                               std::to_string(i));
    std::vector<int> path;
    path.reserve(static_cast<size_t>(table.hops(i, j)));
    int cur = j;
    while (cur != i) {
        int e = table.predecessor_edge(i, cur);
        if (e < 0 || path.size() > static_cast<size_t>(n))
            throw std::logic_error("reconstruct_path: corrupted predecessor table");
        path.push_back(e);
        cur = graph.other_end(e, cur);
    }
    std::reverse(path.begin(), path.end());
    return path;
}

std::vector<int> reconstruct_boundary_path(const DetectorGraph& graph, const PathTable& table, int i) {
    if (i < 0 || i >= table.size())
        throw std::invalid_argument("reconstruct_boundary_path: not a detector id");
    if (table.boundary_weight(i) == kUnreachable)
        throw std::logic_error("reconstruct_boundary_path: boundary unreachable from " + std::to_string(i));
    std::vector<int> path;
    int cur = i;
    while (!graph.is_boundary(cur)) {
        int e = table.boundary_next_edge(cur);
        if (e < 0 || path.size() > static_cast<size_t>(table.size()))
            throw std::logic_error("reconstruct_boundary_path: corrupted route table");
        path.push_back(e);
        cur = graph.other_end(e, cur);
    }
    return path;
}

}  // namespace rtm
