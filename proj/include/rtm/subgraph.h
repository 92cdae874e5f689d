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

#ifndef RTM_SUBGRAPH_H
#define RTM_SUBGRAPH_H

#include <span>
#include <vector>

#include "rtm/graph.h"

namespace rtm {

/// Induced graph on the still-unmatched flipped detectors. Only edges with
/// both endpoints flipped are kept, so the boundary never appears.
class DecodingSubgraph {
  public:
    struct SubEdge {
        int id;  // graph edge id
        int a;   // local index of the lower endpoint
        int b;
    };

    DecodingSubgraph() = default;
    DecodingSubgraph(const DetectorGraph& graph, std::span<const int> flipped);

    int hamming_weight() const { return static_cast<int>(nodes_.size()); }
    std::span<const int> nodes() const { return nodes_; }
    std::span<const SubEdge> edges() const { return edges_; }
    bool empty() const { return nodes_.empty(); }

    bool contains(int detector) const { return local(detector) >= 0; }
    /// Position of `detector` in nodes(), or -1.
    int local(int detector) const;

    int degree(int detector) const { return deg_[checked_local(detector)]; }
    int dependents(int detector) const { return dep_[checked_local(detector)]; }
    int degree_at(int local_index) const { return deg_[static_cast<size_t>(local_index)]; }
    int dependents_at(int local_index) const { return dep_[static_cast<size_t>(local_index)]; }

    std::vector<int> singletons() const;
    int singleton_count() const;

    /// Whether matching across `e` strands a third node: some endpoint has a
    /// degree-1 neighbour other than the opposite endpoint.
    bool creates_singleton(const SubEdge& e) const;
    /// Same, looked up by graph edge id; false if the edge is not present.
    bool creates_singleton(int edge_id) const;

    /// Edges whose endpoints both have degree 1 (two-node components).
    std::vector<SubEdge> isolated_pairs() const;

    /// Drops two detectors and every edge touching them.
    void remove_pair(int a, int b);

    /// Recomputes degrees and dependent counts from scratch and compares.
    bool consistent() const;

  private:
    size_t checked_local(int detector) const;
    void recompute_stats();

    std::vector<int> nodes_;
    std::vector<SubEdge> edges_;
    std::vector<int> deg_;
    std::vector<int> dep_;
};

}  // namespace rtm

#endif  // RTM_SUBGRAPH_H
