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

#ifndef RTM_PREDECODER_H
#define RTM_PREDECODER_H

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "rtm/graph.h"
#include "rtm/latency.h"
#include "rtm/noise.h"
#include "rtm/path_table.h"
#include "rtm/subgraph.h"

namespace rtm {

/// Which rule produced a prematch, in priority order. `kGreedy` marks the
/// baseline predecoder's matches.
enum class Step : std::uint8_t { kIsolated, kSafeDegreeOne, kSafe, kSingletonPath, kRiskyDegreeOne, kRisky, kGreedy };

/// "S1", "S2_1", "S2_2", "S3", "S4_1", "S4_2", "G".
std::string_view step_name(Step step);

struct Prematch {
    int a = 0;
    int b = 0;
    Step step = Step::kIsolated;
    std::vector<int> correction_edges;
    double weight = 0;

    bool operator==(const Prematch&) const = default;
};

struct PredecodeResult {
    std::vector<Prematch> prematches;
    Syndrome residual;
    std::int64_t cycles = 0;
    bool aborted = false;
    int rounds_executed = 0;

    /// Deepest step used, or nullopt when nothing was prematched.
    std::optional<Step> deepest_step() const;
};

struct PredecoderConfig {
    /// Syndromes at or below this weight go straight to the main decoder
    /// when it fits the budget.
    int bypass_hw = 10;
    /// Stop once residual HW <= hw_target and the main decoder fits.
    int hw_target = 10;
    /// When the target is reached but the main decoder does not fit, keep
    /// prematching (toward 8, then 6, ...) instead of aborting.
    bool adaptive = true;
    TimingConfig timing;
};

/// Lowest-weight edge per candidate class found by one scan. Ties go to the
/// lower edge id.
struct CandidateRegisters {
    std::optional<int> safe_degree_one;   // S2_1
    std::optional<int> safe;              // S2_2
    std::optional<int> risky_degree_one;  // S4_1
    std::optional<int> risky;             // S4_2
};

/// One pass over the subgraph edges.
CandidateRegisters scan_candidates(const DecodingSubgraph& sub, const DetectorGraph& graph);

/// Step 1: prematches every two-node component at once and removes them.
std::vector<Prematch> match_isolated_pairs(DecodingSubgraph& sub, const DetectorGraph& graph);

/// Step 3: shortest path from an existing singleton to another flipped bit
/// whose removal strands no degree-1 neighbour. `paths_examined` receives the
/// number of (singleton, partner) pairs looked at. Returns nullopt when there
/// are no singletons or no admissible partner. When the table is quantized,
/// candidates are ranked by weight category instead of exact weight.
std::optional<Prematch> step3_singleton_path(const DecodingSubgraph& sub, const DetectorGraph& graph,
                                             const PathTable& table, std::int64_t* paths_examined = nullptr);

/// Adaptive locality-aware predecoding of one syndrome.
///
/// Each round scans the subgraph once (|E| cycles). Isolated pairs found by
/// the scan are all matched together; otherwise one pair is matched from the
/// first non-empty register in S2_1, S2_2, S3, S4_1, S4_2 order. A round that
/// consults Step 3 costs max(paths examined, |E|). The loop stops when the
/// residual is at or below the target and the main decoder fits in what is
/// left of the budget; it aborts when the next round would overrun it.
PredecodeResult predecode(const DetectorGraph& graph, const PathTable& table, const Syndrome& syndrome,
                          const PredecoderConfig& config = {});

/// Prematch corrections toggled onto `syndrome`'s flipped set.
std::vector<int> apply_prematches(const DetectorGraph& graph, const Syndrome& syndrome,
                                  const std::vector<Prematch>& prematches);

/// {prematches:[{a,b,step,weight,edges}], residual, cycles, aborted}
nlohmann::json predecode_to_json(const PredecodeResult& result);

}  // namespace rtm

#endif  // RTM_PREDECODER_H
