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

#ifndef RTM_NOISE_H
#define RTM_NOISE_H

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "json.hpp"
#include "rtm/graph.h"

namespace rtm {

/// SplitMix64 finalizer. Used to derive independent per-trial seeds.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Seed for trial `index` of stream `stream` under `master`.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream, std::uint64_t index) {
    return splitmix64(splitmix64(splitmix64(master) ^ stream) ^ index);
}

/// MT19937-64 with hand-rolled draws. The standard distributions are
/// implementation-defined, so they are avoided to keep streams identical
/// across standard libraries.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }
    /// Uniform in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    /// Uniform in [0, bound) by rejection; bound > 0.
    std::uint64_t below(std::uint64_t bound);

  private:
    std::mt19937_64 engine_;
};

/// Edges that suffered an error. Sorted, distinct.
struct ErrorSet {
    std::vector<int> edge_ids;

    bool operator==(const ErrorSet&) const = default;
};

struct Syndrome {
    std::vector<int> flipped;  // sorted detector ids, never the boundary
    bool true_observable = false;

    int hamming_weight() const { return static_cast<int>(flipped.size()); }
    bool operator==(const Syndrome&) const = default;
};

/// Each edge independently, with its own probability or `p_override`.
/// Throws std::invalid_argument if `p_override` is outside [0, 0.5).
ErrorSet sample_iid(const DetectorGraph& graph, std::optional<double> p_override, std::uint64_t seed);

/// Exactly k distinct edges, uniformly (Floyd's algorithm).
/// Throws std::invalid_argument if k > num_edges.
ErrorSet inject_k_errors(const DetectorGraph& graph, int k, std::uint64_t seed);

Syndrome syndrome_from_errors(const DetectorGraph& graph, const ErrorSet& errors);

/// Binomial pmf C(n,k) p^k (1-p)^(n-k), evaluated in log space.
double occurrence_probability(int k, int n_edges, double p);
double log_occurrence_probability(int k, int n_edges, double p);
/// Sum of the pmf over k > k_max.
double occurrence_tail(int k_max, int n_edges, double p);

/// {"errors":[...],"flipped":[...],"obs":0|1}
nlohmann::json sample_to_json(const ErrorSet& errors, const Syndrome& syndrome);
Syndrome syndrome_from_json(const nlohmann::json& line);

}  // namespace rtm

#endif  // RTM_NOISE_H
