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

#ifndef RTM_PATH_TABLE_H
#define RTM_PATH_TABLE_H

#include <cstdint>
#include <limits>
#include <vector>

#include "rtm/graph.h"

namespace rtm {

inline constexpr double kUnreachable = std::numeric_limits<double>::infinity();

/// All-pairs shortest paths between detectors, plus each detector's shortest
/// path to the boundary.
///
/// Detector-to-detector routes never pass through the boundary node; a pair
/// joined only through the boundary is two boundary matches, which the main
/// decoder enumerates explicitly. Node-to-boundary routes may cross other
/// detectors.
class PathTable {
  public:
    int size() const { return n_; }

    double weight(int i, int j) const { return weight_[index(i, j)]; }
    int hops(int i, int j) const { return hops_[index(i, j)]; }
    double boundary_weight(int i) const { return boundary_weight_[static_cast<size_t>(i)]; }
    int boundary_hops(int i) const { return boundary_hops_[static_cast<size_t>(i)]; }

    /// Last edge on the stored shortest route from i to j; -1 when i == j or
    /// j is unreachable.
    int predecessor_edge(int i, int j) const { return pred_edge_[index(i, j)]; }
    /// First edge on the route from i toward the boundary; -1 if none.
    int boundary_next_edge(int i) const { return boundary_next_edge_[static_cast<size_t>(i)]; }

    /// Quartile bucketing of detector-pair weights into four categories.
    /// Off unless enabled; categories are 0 (lightest) to 3.
    void enable_quantization();
    bool quantized() const { return !category_.empty(); }
    std::uint8_t category(int i, int j) const { return category_[index(i, j)]; }
    /// Upper bounds of categories 0..2 (category 3 is everything above).
    const std::vector<double>& category_bounds() const { return category_bounds_; }

    bool operator==(const PathTable&) const = default;

  private:
    friend class PathTableBuilder;

    size_t index(int i, int j) const { return static_cast<size_t>(i) * static_cast<size_t>(n_) + static_cast<size_t>(j); }

    int n_ = 0;
    std::vector<double> weight_;
    std::vector<std::uint16_t> hops_;
    std::vector<std::int32_t> pred_edge_;
    std::vector<double> boundary_weight_;
    std::vector<int> boundary_hops_;
    std::vector<int> boundary_next_edge_;
    std::vector<std::uint8_t> category_;
    std::vector<double> category_bounds_;
};

/// OpenMP-parallel over source detectors.
PathTable build_path_table(const DetectorGraph& graph);
/// Single-threaded reference; produces a table equal to `build_path_table`.
PathTable build_path_table_serial(const DetectorGraph& graph);

/// Ordered edge ids of the stored shortest route from detector i to detector
/// j. Throws std::invalid_argument when i == j or either id is not a
/// detector, std::logic_error when j is unreachable from i.
std::vector<int> reconstruct_path(const DetectorGraph& graph, const PathTable& table, int i, int j);

/// Ordered edge ids from detector i to the boundary.
std::vector<int> reconstruct_boundary_path(const DetectorGraph& graph, const PathTable& table, int i);

}  // namespace rtm

#endif  // RTM_PATH_TABLE_H
