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

#include "rtm/harness.h"

#include <algorithm>
#include <cmath>
#include <exception>
#include <sstream>
#include <stdexcept>

#include "rtm/oracle.h"

namespace rtm {

PredecoderKind parse_predecoder(const std::string& name) {
    if (name == "promatch")
        return PredecoderKind::kAdaptive;
    if (name == "greedy" || name == kGreedyLabel)
        return PredecoderKind::kGreedy;
    if (name == "none")
        return PredecoderKind::kNone;
    throw std::invalid_argument("unknown predecoder '" + name + "' (expected promatch, greedy or none)");
}

MainKind parse_main(const std::string& name) {
    if (name == "brute")
        return MainKind::kBruteForce;
    if (name == "oracle")
        return MainKind::kOracle;
    throw std::invalid_argument("unknown main decoder '" + name + "' (expected brute or oracle)");
}

std::string predecoder_label(PredecoderKind kind) {
    switch (kind) {
        case PredecoderKind::kAdaptive:
            return "promatch";
        case PredecoderKind::kGreedy:
            return std::string(kGreedyLabel);
        case PredecoderKind::kNone:
            return "none";
    }
    return "?";
}

PredecoderConfig ExperimentConfig::predecoder_config() const {
    PredecoderConfig c;
    c.hw_target = hw_target;
    c.adaptive = adaptive;
    c.timing.budget_ns = budget_ns;
    c.timing.clock_mhz = clock_mhz;
    c.timing.main_latency.cycles_per_matching = cycles_per_matching;
    return c;
}

DecoderConfig ExperimentConfig::decoder_config() const {
    DecoderConfig c;
    c.hw_cap = main == MainKind::kOracle ? kOracleHwCap : 10;
    c.main_latency.cycles_per_matching = cycles_per_matching;
    return c;
}

void ExperimentConfig::validate(int n_edges) const {
    auto fail = [](const std::string& msg) { throw std::invalid_argument("invalid config: " + msg); };
    if (distance < 3 || distance % 2 == 0)
        fail("distance must be odd and >= 3");
    if (rounds < 0)
        fail("rounds must be >= 1 (or 0 for distance)");
    if (!(p >= 0 && p < 0.5))
        fail("p must lie in [0, 0.5)");
    if (hw_target < 0 || hw_target > 10)
        fail("hw_target must lie in [0, 10]");
    if (!(budget_ns > 0))
        fail("budget_ns must be positive");
    if (!(clock_mhz > 0))
        fail("clock_mhz must be positive");
    if (!(cycles_per_matching >= 0))
        fail("cycles_per_matching must be nonnegative");
    if (k_max < 0 || k_max > n_edges)
        fail("k_max must lie in [0, n_edges=" + std::to_string(n_edges) + "]");
    if (shots_per_k <= 0 || shots_direct <= 0)
        fail("shot counts must be positive");
}

namespace {

// Decoding weights are uniform, so a zero-noise experiment can still use a
// nominal graph probability.
double graph_probability(double p) {
    return p > 0 ? p : 1e-3;
}

}  // namespace

Experiment::Experiment(ExperimentConfig config)
    : config_(config),
      graph_(build_decoding_graph(config.distance, config.effective_rounds(), graph_probability(config.p))) {
    config_.validate(graph_.num_edges());
    table_ = build_path_table(graph_);
}

TrialRecord run_trial(const Experiment& experiment, const ErrorSet& errors) {
    const ExperimentConfig& cfg = experiment.config();
    const DetectorGraph& graph = experiment.graph();
    const PathTable& table = experiment.table();
    const PredecoderConfig pre_cfg = cfg.predecoder_config();
    const DecoderConfig dec_cfg = cfg.decoder_config();
    const bool real_time = cfg.main == MainKind::kBruteForce;

    Syndrome syndrome = syndrome_from_errors(graph, errors);
    TrialRecord rec;
    rec.hw_before = rec.hw_after = syndrome.hamming_weight();
    rec.high_hw = rec.hw_before > pre_cfg.bypass_hw;

    std::optional<PredecodeResult> pre;
    if (cfg.predecoder == PredecoderKind::kAdaptive)
        pre = predecode(graph, table, syndrome, pre_cfg);
    else if (cfg.predecoder == PredecoderKind::kGreedy)
        pre = greedy_baseline(graph, syndrome, pre_cfg);

    if (pre) {
        rec.predecode_cycles = pre->cycles;
        rec.deepest_step = pre->deepest_step();
        rec.hw_after = pre->residual.hamming_weight();
        if (pre->aborted) {
            rec.aborted = rec.failure = true;
            return rec;
        }
    }
    if (rec.hw_after > dec_cfg.hw_cap) {
        rec.capacity_exceeded = rec.failure = true;
        rec.aborted = real_time;
        return rec;
    }
    if (!pre && real_time && !pre_cfg.timing.fits(0, rec.hw_after)) {
        rec.aborted = rec.failure = true;
        return rec;
    }
    DecodeOutcome out = decode(graph, table, syndrome, pre, dec_cfg);
    rec.main_cycles = out.main_cycles;
    rec.failure = out.logical_failure;
    return rec;
}

void TrialStats::add(const TrialRecord& r, const ExperimentConfig& config) {
    ++shots;
    failures += r.failure;
    aborted += r.aborted;
    capacity_exceeded += r.capacity_exceeded;
    const std::int64_t total = r.predecode_cycles + r.main_cycles;
    const bool real_time = config.main == MainKind::kBruteForce;
    if (real_time && !r.aborted && !r.capacity_exceeded) {
        TimingConfig timing = config.predecoder_config().timing;
        if (total > timing.budget_cycles())
            ++budget_violations;
    }
    if (config.predecoder == PredecoderKind::kAdaptive && r.high_hw && !r.aborted && r.hw_after > config.hw_target)
        ++target_violations;
    if (!r.high_hw)
        return;
    ++high_hw;
    ++hw_before[r.hw_before];
    ++hw_after[r.hw_after];
    if (r.aborted) {
        ++high_hw_aborted;
        return;
    }
    ++high_hw_decoded;
    predecode_cycles_sum += r.predecode_cycles;
    predecode_cycles_max = std::max(predecode_cycles_max, r.predecode_cycles);
    total_cycles_sum += total;
    total_cycles_max = std::max(total_cycles_max, total);
    if (r.deepest_step)
        ++deepest_step[static_cast<size_t>(*r.deepest_step)];
}

void TrialStats::merge(const TrialStats& o) {
    shots += o.shots;
    failures += o.failures;
    aborted += o.aborted;
    capacity_exceeded += o.capacity_exceeded;
    high_hw += o.high_hw;
    high_hw_aborted += o.high_hw_aborted;
    high_hw_decoded += o.high_hw_decoded;
    predecode_cycles_sum += o.predecode_cycles_sum;
    predecode_cycles_max = std::max(predecode_cycles_max, o.predecode_cycles_max);
    total_cycles_sum += o.total_cycles_sum;
    total_cycles_max = std::max(total_cycles_max, o.total_cycles_max);
    budget_violations += o.budget_violations;
    target_violations += o.target_violations;
    for (auto [hw, c] : o.hw_before)
        hw_before[hw] += c;
    for (auto [hw, c] : o.hw_after)
        hw_after[hw] += c;
    for (size_t i = 0; i < kStepSlots; ++i)
        deepest_step[i] += o.deepest_step[i];
}

TrialStats run_trials_serial(const Experiment& experiment, const TrialSource& source, std::int64_t count) {
    TrialStats stats;
    for (std::int64_t i = 0; i < count; ++i)
        stats.add(run_trial(experiment, source(i)), experiment.config());
    return stats;
}

TrialStats run_trials_parallel(const Experiment& experiment, const TrialSource& source, std::int64_t count) {
    TrialStats total;
    std::exception_ptr error;
#pragma omp parallel
    {
        TrialStats local;
#pragma omp for schedule(dynamic, 256)
        for (std::int64_t i = 0; i < count; ++i) {
            try {
                local.add(run_trial(experiment, source(i)), experiment.config());
            } catch (...) {
#pragma omp critical(rtm_trial_error)
                if (!error)
                    error = std::current_exception();
            }
        }
#pragma omp critical(rtm_trial_merge)
        total.merge(local);
    }
    if (error)
        std::rethrow_exception(error);
    return total;
}

TrialStats run_trials(const Experiment& experiment, const TrialSource& source, std::int64_t count) {
    return experiment.config().parallel ? run_trials_parallel(experiment, source, count)
                                        : run_trials_serial(experiment, source, count);
}

double LerEstimate::combine() const {
    double sum = 0;
    for (const KStratum& s : per_k)
        sum += s.occurrence * s.failure;
    return sum;
}

namespace {

constexpr std::uint64_t kDirectStream = 0;
constexpr std::uint64_t kRareStreamBase = 1;
constexpr std::uint64_t kCorpusStreamBase = 1000;

}  // namespace

LerEstimate run_direct(const Experiment& experiment) {
    const ExperimentConfig& cfg = experiment.config();
    const DetectorGraph& graph = experiment.graph();
    TrialSource source = [&](std::int64_t i) {
        return sample_iid(graph, cfg.p, derive_seed(cfg.master_seed, kDirectStream, static_cast<std::uint64_t>(i)));
    };
    TrialStats stats = run_trials(experiment, source, cfg.shots_direct);
    LerEstimate est;
    est.shots = stats.shots;
    est.failures = stats.failures;
    est.ler = static_cast<double>(stats.failures) / static_cast<double>(stats.shots);
    est.standard_error = std::sqrt(est.ler * (1 - est.ler) / static_cast<double>(stats.shots));
    return est;
}

LerEstimate rare_event_from_strata(const ExperimentConfig& config, int n_edges,
                                   const std::vector<std::pair<std::int64_t, std::int64_t>>& failures_and_shots) {
    LerEstimate est;
    double variance = 0;
    for (size_t k = 0; k < failures_and_shots.size(); ++k) {
        auto [failures, shots] = failures_and_shots[k];
        KStratum s;
        s.k = static_cast<int>(k);
        s.occurrence = occurrence_probability(s.k, n_edges, config.p);
        s.failures = failures;
        s.shots = shots;
        s.failure = shots > 0 ? static_cast<double>(failures) / static_cast<double>(shots) : 0.0;
        if (shots > 0)
            variance += s.occurrence * s.occurrence * s.failure * (1 - s.failure) / static_cast<double>(shots);
        est.shots += shots;
        est.failures += failures;
        est.per_k.push_back(s);
    }
    est.ler = est.combine();
    est.standard_error = std::sqrt(variance);
    est.truncation = occurrence_tail(static_cast<int>(failures_and_shots.size()) - 1, n_edges, config.p);
    return est;
}

LerEstimate run_rare_event(const Experiment& experiment) {
    const ExperimentConfig& cfg = experiment.config();
    const DetectorGraph& graph = experiment.graph();
    std::vector<std::pair<std::int64_t, std::int64_t>> strata{{0, 0}};
    for (int k = 1; k <= cfg.k_max; ++k) {
        if (cfg.p == 0) {
            strata.emplace_back(0, 0);
            continue;
        }
        TrialSource source = [&, k](std::int64_t i) {
            return inject_k_errors(
                graph, k,
                derive_seed(cfg.master_seed, kRareStreamBase + static_cast<std::uint64_t>(k),
                            static_cast<std::uint64_t>(i)));
        };
        TrialStats stats = run_trials(experiment, source, cfg.shots_per_k);
        strata.emplace_back(stats.failures, stats.shots);
    }
    return rare_event_from_strata(cfg, graph.num_edges(), strata);
}

HighHwCorpus run_high_hw_corpus(const Experiment& experiment) {
    const ExperimentConfig& cfg = experiment.config();
    const DetectorGraph& graph = experiment.graph();
    HighHwCorpus corpus;
    for (int k = kMinHighHwErrors; k <= cfg.k_max; ++k) {
        TrialSource source = [&, k](std::int64_t i) {
            return inject_k_errors(
                graph, k,
                derive_seed(cfg.master_seed, kCorpusStreamBase + static_cast<std::uint64_t>(k),
                            static_cast<std::uint64_t>(i)));
        };
        TrialStats stats = run_trials(experiment, source, cfg.shots_per_k);
        corpus.total.merge(stats);
        corpus.ks.push_back(k);
        corpus.per_k.push_back(std::move(stats));
    }
    return corpus;
}

HwDistribution report_hw_distribution(const HighHwCorpus& corpus) {
    HwDistribution d;
    d.before = corpus.total.hw_before;
    d.after = corpus.total.hw_after;
    d.samples = corpus.total.high_hw;
    d.aborted = corpus.total.high_hw_aborted;
    return d;
}

namespace {

// P_o(k) / shots_k: converts per-k counts into unconditional probabilities.
std::vector<double> stratum_weights(const HighHwCorpus& corpus, const ExperimentConfig& config, int n_edges) {
    std::vector<double> w;
    for (size_t i = 0; i < corpus.ks.size(); ++i) {
        const auto shots = corpus.per_k[i].shots;
        w.push_back(shots > 0 ? occurrence_probability(corpus.ks[i], n_edges, config.p) / static_cast<double>(shots)
                              : 0.0);
    }
    return w;
}

double ratio(double num, double den) {
    return den > 0 ? num / den : 0.0;
}

}  // namespace

LatencyReport report_latency(const HighHwCorpus& corpus, const ExperimentConfig& config, int n_edges) {
    LatencyReport r;
    const TrialStats& t = corpus.total;
    const TimingConfig timing = config.predecoder_config().timing;
    r.samples = t.high_hw;
    r.decoded = t.high_hw_decoded;
    r.budget_violations = t.budget_violations;
    if (r.samples == 0)
        return r;
    const auto decoded = static_cast<double>(t.high_hw_decoded);
    r.predecode_max_ns = timing.to_ns(t.predecode_cycles_max);
    r.total_max_ns = timing.to_ns(t.total_cycles_max);
    r.predecode_mean_ns = ratio(timing.to_ns(t.predecode_cycles_sum), decoded);
    r.total_mean_ns = ratio(timing.to_ns(t.total_cycles_sum), decoded);
    r.abort_rate = static_cast<double>(t.high_hw_aborted) / static_cast<double>(t.high_hw);

    auto w = stratum_weights(corpus, config, n_edges);
    double pre_sum = 0, total_sum = 0, dec = 0, high = 0, aborted = 0;
    for (size_t i = 0; i < w.size(); ++i) {
        const TrialStats& s = corpus.per_k[i];
        pre_sum += w[i] * timing.to_ns(s.predecode_cycles_sum);
        total_sum += w[i] * timing.to_ns(s.total_cycles_sum);
        dec += w[i] * static_cast<double>(s.high_hw_decoded);
        high += w[i] * static_cast<double>(s.high_hw);
        aborted += w[i] * static_cast<double>(s.high_hw_aborted);
    }
    r.weighted_predecode_mean_ns = ratio(pre_sum, dec);
    r.weighted_total_mean_ns = ratio(total_sum, dec);
    r.weighted_abort_rate = ratio(aborted, high);
    return r;
}

StepUsage report_step_usage(const HighHwCorpus& corpus, const ExperimentConfig& config, int n_edges) {
    StepUsage u;
    std::int64_t used = 0;
    for (auto c : corpus.total.deepest_step)
        used += c;
    u.decoded = used;
    for (size_t s = 0; s < kStepSlots; ++s)
        u.raw[s] = ratio(static_cast<double>(corpus.total.deepest_step[s]), static_cast<double>(used));

    auto w = stratum_weights(corpus, config, n_edges);
    std::array<double, kStepSlots> mass{};
    double total = 0;
    for (size_t i = 0; i < w.size(); ++i)
        for (size_t s = 0; s < kStepSlots; ++s) {
            mass[s] += w[i] * static_cast<double>(corpus.per_k[i].deepest_step[s]);
            total += w[i] * static_cast<double>(corpus.per_k[i].deepest_step[s]);
        }
    for (size_t s = 0; s < kStepSlots; ++s)
        u.weighted[s] = ratio(mass[s], total);
    return u;
}

nlohmann::json config_to_json(const ExperimentConfig& c) {
    return {{"distance", c.distance},
            {"rounds", c.effective_rounds()},
            {"p", c.p},
            {"predecoder", predecoder_label(c.predecoder)},
            {"main", c.main == MainKind::kOracle ? "oracle" : "brute"},
            {"hw_target", c.hw_target},
            {"adaptive", c.adaptive},
            {"budget_ns", c.budget_ns},
            {"clock_mhz", c.clock_mhz},
            {"cycles_per_matching", c.cycles_per_matching},
            {"k_max", c.k_max},
            {"shots_per_k", c.shots_per_k},
            {"shots_direct", c.shots_direct},
            {"master_seed", c.master_seed}};
}

namespace {

nlohmann::json envelope(const std::string& kind, const ExperimentConfig& config) {
    return {{"schema_version", kSchemaVersion}, {"kind", kind}, {"config", config_to_json(config)}};
}

nlohmann::json hist_json(const std::map<int, std::int64_t>& h) {
    nlohmann::json out = nlohmann::json::object();
    for (auto [k, v] : h)
        out[std::to_string(k)] = v;
    return out;
}

constexpr std::array<Step, kStepSlots> kAllSteps = {Step::kIsolated,       Step::kSafeDegreeOne, Step::kSafe,
                                                     Step::kSingletonPath, Step::kRiskyDegreeOne, Step::kRisky,
                                                     Step::kGreedy};

}  // namespace

nlohmann::json ler_to_json(const LerEstimate& e, const ExperimentConfig& config) {
    nlohmann::json j = envelope(e.per_k.empty() ? "ler_direct" : "ler_rare_event", config);
    j["ler"] = e.ler;
    j["stderr"] = e.standard_error;
    j["shots"] = e.shots;
    j["failures"] = e.failures;
    if (!e.per_k.empty()) {
        j["truncation_bound"] = e.truncation;
        nlohmann::json per_k = nlohmann::json::array();
        for (const KStratum& s : e.per_k)
            per_k.push_back({{"k", s.k}, {"P_o", s.occurrence}, {"P_f", s.failure}, {"failures", s.failures},
                             {"shots", s.shots}});
        j["per_k"] = std::move(per_k);
    }
    return j;
}

nlohmann::json hw_distribution_to_json(const HwDistribution& d, const ExperimentConfig& config) {
    nlohmann::json j = envelope("hw_distribution", config);
    j["samples"] = d.samples;
    j["aborted"] = d.aborted;
    j["before"] = hist_json(d.before);
    j["after"] = hist_json(d.after);
    return j;
}

nlohmann::json latency_to_json(const LatencyReport& r, const ExperimentConfig& config) {
    nlohmann::json j = envelope("latency", config);
    j["samples"] = r.samples;
    j["decoded"] = r.decoded;
    if (r.samples == 0)
        return j;
    j["predecode"] = {{"max_ns", r.predecode_max_ns},
                      {"mean_ns", r.predecode_mean_ns},
                      {"weighted_mean_ns", r.weighted_predecode_mean_ns}};
    j["total"] = {{"max_ns", r.total_max_ns},
                  {"mean_ns", r.total_mean_ns},
                  {"weighted_mean_ns", r.weighted_total_mean_ns}};
    j["abort_rate"] = r.abort_rate;
    j["weighted_abort_rate"] = r.weighted_abort_rate;
    j["budget_violations"] = r.budget_violations;
    return j;
}

nlohmann::json step_usage_to_json(const StepUsage& u, const ExperimentConfig& config) {
    nlohmann::json j = envelope("step_usage", config);
    j["decoded"] = u.decoded;
    nlohmann::json raw = nlohmann::json::object();
    nlohmann::json weighted = nlohmann::json::object();
    for (size_t s = 0; s < kStepSlots; ++s) {
        raw[std::string(step_name(kAllSteps[s]))] = u.raw[s];
        weighted[std::string(step_name(kAllSteps[s]))] = u.weighted[s];
    }
    j["frequency"] = std::move(raw);
    j["weighted_frequency"] = std::move(weighted);
    return j;
}

std::string ler_to_csv(const LerEstimate& e) {
    std::ostringstream out;
    out.precision(17);
    if (e.per_k.empty()) {
        out << "ler,stderr,failures,shots\n" << e.ler << ',' << e.standard_error << ',' << e.failures << ','
            << e.shots << '\n';
        return out.str();
    }
    out << "k,P_o,P_f,failures,shots\n";
    for (const KStratum& s : e.per_k)
        out << s.k << ',' << s.occurrence << ',' << s.failure << ',' << s.failures << ',' << s.shots << '\n';
    return out.str();
}

std::string hw_distribution_to_csv(const HwDistribution& d) {
    std::ostringstream out;
    out << "hw,before,after\n";
    std::map<int, std::pair<std::int64_t, std::int64_t>> rows;
    for (auto [hw, c] : d.before)
        rows[hw].first = c;
    for (auto [hw, c] : d.after)
        rows[hw].second = c;
    for (auto [hw, pr] : rows)
        out << hw << ',' << pr.first << ',' << pr.second << '\n';
    return out.str();
}

std::string latency_to_csv(const LatencyReport& r) {
    std::ostringstream out;
    out << "stage,max_ns,mean_ns,weighted_mean_ns,abort_rate\n";
    if (r.samples == 0)
        return out.str();
    out << "predecode," << r.predecode_max_ns << ',' << r.predecode_mean_ns << ',' << r.weighted_predecode_mean_ns
        << ',' << r.abort_rate << '\n';
    out << "total," << r.total_max_ns << ',' << r.total_mean_ns << ',' << r.weighted_total_mean_ns << ','
        << r.abort_rate << '\n';
    return out.str();
}

std::string step_usage_to_csv(const StepUsage& u) {
    std::ostringstream out;
    out << "step,frequency,weighted_frequency\n";
    for (size_t s = 0; s < kStepSlots; ++s)
        out << step_name(kAllSteps[s]) << ',' << u.raw[s] << ',' << u.weighted[s] << '\n';
    return out.str();
}

}  // namespace rtm
