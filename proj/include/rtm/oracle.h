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

#ifndef RTM_ORACLE_H
#define RTM_ORACLE_H

#include <cstdint>
#include <map>
#include <span>
#include <string>

#include "rtm/main_decoder.h"
#include "rtm/predecoder.h"

namespace rtm {

inline constexpr int kOracleHwCap = 14;

/// Exact matching of the whole syndrome, no predecoding. Throws
/// std::invalid_argument above kOracleHwCap.
DecodeOutcome oracle_mwpm(const DetectorGraph& graph, const PathTable& table, const Syndrome& syndrome);

/// Reference predecoder without singleton avoidance ("greedy-nosafety").
///
/// Each round scans the subgraph once and matches a maximal set of disjoint
/// edges, lightest first (ties to the lower id). Same cycle accounting and
/// stop rule as `predecode`; when the subgraph runs out of edges with the
/// residual still too heavy for the budget, the result is marked aborted.
PredecodeResult greedy_baseline(const DetectorGraph& graph, const Syndrome& syndrome,
                                const PredecoderConfig& config = {});

inline constexpr std::string_view kGreedyLabel = "greedy-nosafety";

/// Hop count of every chain in the oracle matching (boundary matches count
/// their node-to-boundary hops).
using ChainHistogram = std::map<int, std::int64_t>;

ChainHistogram chain_length_histogram(const DetectorGraph& graph, const PathTable& table,
                                      std::span<const Syndrome> syndromes);

/// Adds the chains of one oracle matching.
void add_chain_lengths(ChainHistogram& hist, const PathTable& table, const MatchingSet& matching);

/// "hops,count,frequency" with a header line.
std::string histogram_csv(const ChainHistogram& hist);

}  // namespace rtm

#endif  // RTM_ORACLE_H
