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

#ifndef RTM_MAIN_DECODER_H
#define RTM_MAIN_DECODER_H

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "json.hpp"
#include "rtm/graph.h"
#include "rtm/latency.h"
#include "rtm/noise.h"
#include "rtm/path_table.h"
#include "rtm/predecoder.h"

namespace rtm {

struct MatchingSet {
    std::vector<std::pair<int, int>> pairs;  // (lower id, higher id), ascending
    std::vector<int> boundary_matches;       // ascending
    double total_weight = 0;
    std::vector<int> correction_edges;       // sorted, parity-reduced
    std::int64_t enumerated = 0;             // complete matchings examined
};

struct MwpmOptions {
    int hw_cap = 10;
    bool allow_boundary = true;
    /// Branch-and-bound. Leaves the result unchanged but makes `enumerated`
    /// count only the matchings actually reached.
    bool prune = true;
};

/// Exhaustive minimum-weight matching of `flipped` on the path table's
/// complete graph, each node either paired or sent to the boundary.
///
/// Enumeration is canonical: the smallest unmatched node is paired with
/// every later node in id order, then with the boundary. Among equal-weight
/// optima the first one reached wins, which is the lexicographically
/// smallest pair list. Throws std::invalid_argument when |flipped| exceeds
/// `hw_cap` or no perfect matching exists.
MatchingSet brute_force_mwpm(std::span<const int> flipped, const PathTable& table, const MwpmOptions& options = {});

/// Fills `correction_edges` of a matching from stored shortest routes.
void attach_corrections(MatchingSet& matching, const DetectorGraph& graph, const PathTable& table);

struct DecodeOutcome {
    std::vector<Prematch> prematches;
    MatchingSet matching;
    std::vector<int> correction_edges;  // prematches and main matching, XOR-combined
    double total_weight = 0;            // prematch weights + matching weight
    std::int64_t predecode_cycles = 0;
    std::int64_t main_cycles = 0;
    bool aborted = false;
    bool predicted_observable = false;
    bool logical_failure = false;

    std::int64_t cycles_total() const { return predecode_cycles + main_cycles; }
};

struct DecoderConfig {
    int hw_cap = 10;
    MainLatencyModel main_latency;
};

/// Main decoder on the syndrome, or on a predecoder's residual when
/// `predecode` is given. An aborted predecode is a logical failure without
/// running the main decoder. Throws std::invalid_argument when the HW to be
/// matched exceeds `config.hw_cap`.
DecodeOutcome decode(const DetectorGraph& graph, const PathTable& table, const Syndrome& syndrome,
                     const std::optional<PredecodeResult>& predecode = std::nullopt,
                     const DecoderConfig& config = {});

/// Sorted symmetric difference of edge lists.
std::vector<int> xor_edges(std::vector<int> edges);

/// Parity of observable-flipping edges.
bool observable_parity(const DetectorGraph& graph, std::span<const int> edges);

/// {pairs, boundary, weight, failure, cycles_total, aborted}
nlohmann::json outcome_to_json(const DecodeOutcome& outcome);

}  // namespace rtm

#endif  // RTM_MAIN_DECODER_H
