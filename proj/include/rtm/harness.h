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

#ifndef RTM_HARNESS_H
#define RTM_HARNESS_H

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "rtm/graph.h"
#include "rtm/main_decoder.h"
#include "rtm/noise.h"
#include "rtm/path_table.h"
#include "rtm/predecoder.h"

namespace rtm {

inline constexpr int kSchemaVersion = 1;

enum class PredecoderKind { kAdaptive, kGreedy, kNone };
enum class MainKind { kBruteForce, kOracle };

PredecoderKind parse_predecoder(const std::string& name);
MainKind parse_main(const std::string& name);
std::string predecoder_label(PredecoderKind kind);

struct ExperimentConfig {
    int distance = 5;
    int rounds = 0;  // 0 means `distance`
    double p = 1e-3;
    PredecoderKind predecoder = PredecoderKind::kAdaptive;
    MainKind main = MainKind::kBruteForce;
    int hw_target = 10;
    bool adaptive = true;
    double budget_ns = 960.0;
    double clock_mhz = 250.0;
    double cycles_per_matching = MainLatencyModel{}.cycles_per_matching;
    int k_max = 24;
    std::int64_t shots_per_k = 100000;
    std::int64_t shots_direct = 1000000;
    std::uint64_t master_seed = 1;
    bool parallel = true;

    int effective_rounds() const { return rounds > 0 ? rounds : distance; }
    PredecoderConfig predecoder_config() const;
    DecoderConfig decoder_config() const;
    /// Throws std::invalid_argument.
    void validate(int n_edges) const;
};

/// Graph, path table and config shared read-only by all trials.
class Experiment {
  public:
    explicit Experiment(ExperimentConfig config);

    const ExperimentConfig& config() const { return config_; }
    const DetectorGraph& graph() const { return graph_; }
    const PathTable& table() const { return table_; }

  private:
    ExperimentConfig config_;
    DetectorGraph graph_;
    PathTable table_;
};

struct TrialRecord {
    int hw_before = 0;
    int hw_after = 0;
    bool failure = false;
    bool aborted = false;
    bool capacity_exceeded = false;  // residual too heavy for the main decoder
    bool high_hw = false;            // above the bypass weight
    std::int64_t predecode_cycles = 0;
    std::int64_t main_cycles = 0;
    std::optional<Step> deepest_step;
};

/// Decodes one error configuration with the experiment's decoder chain.
TrialRecord run_trial(const Experiment& experiment, const ErrorSet& errors);

inline constexpr size_t kStepSlots = 7;

/// Integer-only aggregate so that merge order never changes the result.
struct TrialStats {
    std::int64_t shots = 0;
    std::int64_t failures = 0;
    std::int64_t aborted = 0;
    std::int64_t capacity_exceeded = 0;
    std::int64_t high_hw = 0;
    std::int64_t high_hw_aborted = 0;
    std::int64_t high_hw_decoded = 0;
    std::int64_t predecode_cycles_sum = 0;
    std::int64_t predecode_cycles_max = 0;
    std::int64_t total_cycles_sum = 0;
    std::int64_t total_cycles_max = 0;
    std::int64_t budget_violations = 0;  // non-aborted real-time decodes over budget
    std::int64_t target_violations = 0;  // non-aborted predecodes left above hw_target
    std::map<int, std::int64_t> hw_before;  // high-HW samples only
    std::map<int, std::int64_t> hw_after;
    std::array<std::int64_t, kStepSlots> deepest_step{};  // non-aborted high-HW samples

    void add(const TrialRecord& record, const ExperimentConfig& config);
    void merge(const TrialStats& other);
    bool operator==(const TrialStats&) const = default;
};

/// Error configuration for trial `index`.
using TrialSource = std::function<ErrorSet(std::int64_t index)>;

TrialStats run_trials_serial(const Experiment& experiment, const TrialSource& source, std::int64_t count);
/// OpenMP over trial indices; equal to the serial result.
TrialStats run_trials_parallel(const Experiment& experiment, const TrialSource& source, std::int64_t count);
TrialStats run_trials(const Experiment& experiment, const TrialSource& source, std::int64_t count);

struct KStratum {
    int k = 0;
    double occurrence = 0;  // P_o(k)
    double failure = 0;     // P_f(k)
    std::int64_t failures = 0;
    std::int64_t shots = 0;
};

struct LerEstimate {
    double ler = 0;
    double standard_error = 0;
    std::vector<KStratum> per_k;  // empty for direct runs
    double truncation = 0;        // sum of P_o(k) over k > k_max
    std::int64_t shots = 0;
    std::int64_t failures = 0;

    /// Recomputes sum_k P_o(k) P_f(k) from per_k.
    double combine() const;
};

/// shots_direct i.i.d. samples at config.p; binomial standard error.
LerEstimate run_direct(const Experiment& experiment);
/// Stratified by exact error count: shots_per_k injections for each
/// k = 1..k_max, combined as sum_k P_o(k) P_f(k). P_f(0) is 0 since no
/// errors means an empty syndrome.
LerEstimate run_rare_event(const Experiment& experiment);
/// The combination step alone, from (failures, shots) for k = 0..k_max.
LerEstimate rare_event_from_strata(const ExperimentConfig& config, int n_edges,
                                   const std::vector<std::pair<std::int64_t, std::int64_t>>& failures_and_shots);

/// High-HW syndromes gathered by injecting k = 6..k_max errors, shots_per_k
/// each. Per-k statistics are kept so frequencies can be weighted by P_o(k).
struct HighHwCorpus {
    std::vector<int> ks;
    std::vector<TrialStats> per_k;
    TrialStats total;
};

inline constexpr int kMinHighHwErrors = 6;

HighHwCorpus run_high_hw_corpus(const Experiment& experiment);

struct HwDistribution {
    std::map<int, std::int64_t> before;
    std::map<int, std::int64_t> after;
    std::int64_t samples = 0;
    std::int64_t aborted = 0;
};

struct LatencyReport {
    std::int64_t samples = 0;  // high-HW syndromes
    std::int64_t decoded = 0;  // not aborted
    double predecode_max_ns = 0;
    double predecode_mean_ns = 0;
    double total_max_ns = 0;
    double total_mean_ns = 0;
    double abort_rate = 0;
    double weighted_predecode_mean_ns = 0;
    double weighted_total_mean_ns = 0;
    double weighted_abort_rate = 0;
    std::int64_t budget_violations = 0;
};

struct StepUsage {
    std::int64_t decoded = 0;
    std::array<double, kStepSlots> raw{};       // fraction of decoded samples
    std::array<double, kStepSlots> weighted{};  // P_o(k)-weighted
};

HwDistribution report_hw_distribution(const HighHwCorpus& corpus);
LatencyReport report_latency(const HighHwCorpus& corpus, const ExperimentConfig& config, int n_edges);
StepUsage report_step_usage(const HighHwCorpus& corpus, const ExperimentConfig& config, int n_edges);

nlohmann::json config_to_json(const ExperimentConfig& config);
nlohmann::json ler_to_json(const LerEstimate& estimate, const ExperimentConfig& config);
nlohmann::json hw_distribution_to_json(const HwDistribution& dist, const ExperimentConfig& config);
nlohmann::json latency_to_json(const LatencyReport& report, const ExperimentConfig& config);
nlohmann::json step_usage_to_json(const StepUsage& usage, const ExperimentConfig& config);

std::string ler_to_csv(const LerEstimate& estimate);
std::string hw_distribution_to_csv(const HwDistribution& dist);
std::string latency_to_csv(const LatencyReport& report);
std::string step_usage_to_csv(const StepUsage& usage);

}  // namespace rtm

#endif  // RTM_HARNESS_H
