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

#ifndef RTM_GRAPH_H
#define RTM_GRAPH_H

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

namespace rtm {

/// A Z-type parity check in one syndrome-extraction round.
///
/// (x, y) is the plaquette's lower-left corner on the data-qubit lattice, so
/// bulk plaquettes have x, y in [0, d-2] and the weight-2 boundary plaquettes
/// sit at y = -1 or y = d-1.
struct Detector {
    int id = 0;
    int x = 0;
    int y = 0;
    int round = 0;

    bool operator==(const Detector&) const = default;
};

/// One independent error mechanism. `v` may be the graph's boundary id.
struct Edge {
    int id = 0;
    int u = 0;
    int v = 0;
    double probability = 0;
    double weight = 0;
    bool flips_observable = false;

    bool operator==(const Edge&) const = default;
};

/// Probability to matching weight, -ln(p).
double weight_from_probability(double p);

/// Decoding graph for the Z stabilizers of a rotated surface code over
/// several rounds, plus one virtual boundary node.
///
/// Detector ids are dense in [0, num_detectors()). The boundary node is
/// `boundary_id() == num_detectors()` internally; the JSON format writes it
/// as -1. Immutable after construction.
class DetectorGraph {
  public:
    DetectorGraph() = default;

    /// Assembles a graph from explicit parts, checking structural validity
    /// (dense ids, endpoints in range, no boundary-boundary edges,
    /// probabilities in (0, 0.5)). Connectivity is not required here; see
    /// `is_connected()`. Throws std::invalid_argument.
    static DetectorGraph from_parts(
        int distance, int rounds, double p, std::vector<Detector> nodes, std::vector<Edge> edges);

    int distance() const { return distance_; }
    int rounds() const { return rounds_; }
    double p() const { return p_; }

    int num_detectors() const { return static_cast<int>(nodes_.size()); }
    int num_edges() const { return static_cast<int>(edges_.size()); }
    int boundary_id() const { return num_detectors(); }
    bool is_boundary(int node) const { return node == boundary_id(); }

    std::span<const Detector> nodes() const { return nodes_; }
    std::span<const Edge> edges() const { return edges_; }
    const Edge& edge(int id) const { return edges_[static_cast<size_t>(id)]; }

    /// Incident edge ids of a detector or of the boundary, in id order.
    std::span<const int> incident(int node) const;

    /// The endpoint of `edge_id` that is not `node`.
    int other_end(int edge_id, int node) const;

    /// Connected when the boundary is included.
    bool is_connected() const;

  private:
    int distance_ = 0;
    int rounds_ = 0;
    double p_ = 0;
    std::vector<Detector> nodes_;
    std::vector<Edge> edges_;
    std::vector<size_t> adj_offsets_;
    std::vector<int> adj_edges_;
};

/// Rotated distance-`distance` code, `rounds` syndrome layers, uniform edge
/// probability `p`.
///
/// Each data qubit contributes one spacelike edge per round (a boundary edge
/// when it touches a single Z plaquette). Consecutive rounds of the same
/// plaquette are joined by a timelike edge. The logical observable is the Z
/// string on the data column x = 0, so exactly the left boundary edges flip
/// it. Throws std::invalid_argument on even or too-small distance,
/// rounds < 1, or p outside (0, 0.5).
DetectorGraph build_decoding_graph(int distance, int rounds, double p);

/// Closed-form counts for `build_decoding_graph`.
int expected_detector_count(int distance, int rounds);
int expected_edge_count(int distance, int rounds);

nlohmann::json graph_to_json(const DetectorGraph& graph);
DetectorGraph graph_from_json(const nlohmann::json& doc);

}  // namespace rtm

#endif  // RTM_GRAPH_H
