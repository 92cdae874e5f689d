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

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "rtm/harness.h"
#include "rtm/oracle.h"
#include "test_util.h"

using namespace rtm;

namespace {

int g_failed = 0;
std::int64_t g_budget_checked = 0;
std::int64_t g_budget_violations = 0;

void report(int id, const std::string& name, bool pass, const std::string& detail) {
    std::printf("[%s] %d %s: %s\n", pass ? "PASS" : "FAIL", id, name.c_str(), detail.c_str());
    std::fflush(stdout);
    if (!pass)
        ++g_failed;
}

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

void track_budget(const TimingConfig& timing, std::int64_t predecode_cycles, int residual_hw) {
    ++g_budget_checked;
    if (!timing.fits(predecode_cycles, residual_hw))
        ++g_budget_violations;
}

bool near(double a, double b) { return std::abs(a - b) <= 1e-9 * std::max(1.0, std::abs(b)); }

// k drawn from the occurrence distribution restricted to [k_lo, k_hi].
int draw_k(Rng& rng, int n_edges, double p, int k_lo, int k_hi) {
    std::vector<double> cdf;
    double total = 0;
    for (int k = k_lo; k <= k_hi; ++k)
        cdf.push_back(total += occurrence_probability(k, n_edges, p));
    const double u = rng.uniform() * total;
    for (size_t i = 0; i < cdf.size(); ++i)
        if (u < cdf[i])
            return k_lo + static_cast<int>(i);
    return k_hi;
}

void matching_counts() {
    std::vector<testing::HandEdge> spec;
    for (int i = 0; i < 9; ++i)
        spec.push_back({i, i + 1, 0.1});
    auto g = testing::make_graph(10, spec);
    auto t = build_path_table(g);
    auto start = std::chrono::steady_clock::now();
    bool ok = true;
    std::string counts;
    std::int64_t expected = 1;
    for (int m = 2; m <= 10; m += 2) {
        expected *= m - 1;
        std::vector<int> nodes;
        for (int i = 0; i < m; ++i)
            nodes.push_back(i);
        auto r = brute_force_mwpm(nodes, t, {.hw_cap = 10, .allow_boundary = false, .prune = false});
        ok &= r.enumerated == expected;
        counts += fmt("%s%d:%lld", counts.empty() ? "" : " ", m, static_cast<long long>(r.enumerated));
    }
    const double secs = seconds_since(start);
    ok &= expected == 945 && secs < 1.0;
    report(1, "matching-count exactness", ok, counts + fmt(" in %.4f s", secs));
}

void oracle_equivalence() {
    auto g = build_decoding_graph(5, 5, 0.003);
    auto t = build_path_table(g);
    int compared = 0, mismatches = 0, dp_mismatches = 0;
    for (std::uint64_t s = 0; compared < 10000; ++s) {
        auto syn = syndrome_from_errors(g, sample_iid(g, std::nullopt, derive_seed(101, 0, s)));
        if (syn.hamming_weight() == 0 || syn.hamming_weight() > 10)
            continue;
        ++compared;
        auto main = decode(g, t, syn);
        auto exact = oracle_mwpm(g, t, syn);
        mismatches += !near(main.total_weight, exact.total_weight);
        dp_mismatches += !near(main.total_weight, testing::table_dp_weight(t, syn.flipped));
    }
    report(2, "oracle equivalence at low HW", mismatches == 0 && dp_mismatches == 0,
           fmt("%d nonempty syndromes, %d oracle mismatches, %d subset-DP mismatches", compared, mismatches,
               dp_mismatches));
}

void predecoder_near_optimality() {
    const double p = 0.005;
    auto g = build_decoding_graph(5, 5, p);
    auto t = build_path_table(g);
    PredecoderConfig config;
    DecoderConfig wide;
    wide.hw_cap = kOracleHwCap;
    Rng rng(derive_seed(103, 0, 0));
    int corpus = 0, below_oracle = 0, equal = 0, greedy_equal = 0, aborted = 0, greedy_aborted = 0;
    for (std::uint64_t s = 0; corpus < 1000; ++s) {
        const int k = draw_k(rng, g.num_edges(), p, kMinHighHwErrors, 24);
        auto syn = syndrome_from_errors(g, inject_k_errors(g, k, derive_seed(103, 1, s)));
        if (syn.hamming_weight() <= 10 || syn.hamming_weight() > kOracleHwCap)
            continue;
        ++corpus;
        const double best = oracle_mwpm(g, t, syn).total_weight;

        auto pre = predecode(g, t, syn, config);
        if (pre.aborted) {
            ++aborted;
        } else {
            track_budget(config.timing, pre.cycles, pre.residual.hamming_weight());
            const double w = decode(g, t, syn, pre).total_weight;
            below_oracle += w < best - 1e-9;
            equal += near(w, best);
        }
        auto greedy = greedy_baseline(g, syn, config);
        if (greedy.aborted) {
            ++greedy_aborted;
        } else {
            greedy_equal += near(decode(g, t, syn, greedy, wide).total_weight, best);
        }
    }
    const double rate = equal / 1000.0;
    const double greedy_rate = greedy_equal / 1000.0;
    report(3, "predecoder near-optimality", below_oracle == 0 && rate >= 0.80 && greedy_rate < rate,
           fmt("equal %.3f (aborted %d, below oracle %d), greedy-nosafety equal %.3f (aborted %d)", rate, aborted,
               below_oracle, greedy_rate, greedy_aborted));
}

void coverage_guarantee() {
    auto g = build_decoding_graph(11, 11, 1e-4);
    auto t = build_path_table(g);
    PredecoderConfig config;
    int corpus = 0, aborted = 0, over_target = 0;
    for (std::uint64_t s = 0; corpus < 100000; ++s) {
        const int k = kMinHighHwErrors + static_cast<int>(s % (24 - kMinHighHwErrors + 1));
        auto syn = syndrome_from_errors(g, inject_k_errors(g, k, derive_seed(104, 0, s)));
        if (syn.hamming_weight() <= 10)
            continue;
        ++corpus;
        auto pre = predecode(g, t, syn, config);
        if (pre.aborted) {
            ++aborted;
            continue;
        }
        over_target += pre.residual.hamming_weight() > config.hw_target;
        track_budget(config.timing, pre.cycles, pre.residual.hamming_weight());
    }
    const double rate = static_cast<double>(aborted) / corpus;
    report(4, "coverage guarantee", over_target == 0 && rate < 1e-2,
           fmt("%d high-HW syndromes (k=6..24), %d above target, abort rate %.2e", corpus, over_target, rate));
}

void singleton_invariants() {
    auto g = build_decoding_graph(11, 11, 1e-3);
    auto t = build_path_table(g);
    std::int64_t rounds = 0, prematches = 0, increases = 0, parity = 0, inconsistent = 0, nondeterministic = 0;
    std::int64_t syndromes = 0;
    for (std::uint64_t s = 0; rounds < 100000; ++s) {
        PredecoderConfig config;
        config.hw_target = static_cast<int>(2 * (s % 6));
        config.adaptive = s % 2 == 0;
        if (s % 3 == 0)
            config.timing.budget_ns = 1e6;
        const int k = 8 + static_cast<int>(s % 17);
        auto syn = syndrome_from_errors(g, inject_k_errors(g, k, derive_seed(105, 0, s)));
        ++syndromes;
        auto r = predecode(g, t, syn, config);
        rounds += r.rounds_executed;
        parity += (r.residual.hamming_weight() - syn.hamming_weight()) % 2 != 0;
        auto again = predecode(g, t, syn, config);
        nondeterministic += again.prematches != r.prematches || again.cycles != r.cycles ||
                            again.residual != r.residual || again.aborted != r.aborted;
        DecodingSubgraph sub(g, syn.flipped);
        for (const Prematch& m : r.prematches) {
            const int before = sub.singleton_count();
            sub.remove_pair(m.a, m.b);
            ++prematches;
            if (m.step <= Step::kSingletonPath && sub.singleton_count() > before)
                ++increases;
        }
        inconsistent += !sub.consistent() || std::vector<int>(sub.nodes().begin(), sub.nodes().end()) != r.residual.flipped;
    }
    report(5, "singleton invariants", increases == 0 && parity == 0 && inconsistent == 0 && nondeterministic == 0,
           fmt("%lld rounds, %lld prematches over %lld syndromes; %lld singleton increases, %lld parity errors, "
               "%lld inconsistent replays, %lld nondeterministic",
               static_cast<long long>(rounds), static_cast<long long>(prematches), static_cast<long long>(syndromes),
               static_cast<long long>(increases), static_cast<long long>(parity),
               static_cast<long long>(inconsistent), static_cast<long long>(nondeterministic)));
}

void chain_lengths() {
    auto g = build_decoding_graph(7, 7, 1e-4);
    auto t = build_path_table(g);
    ChainHistogram hist;
    int used = 0;
    for (std::uint64_t s = 0; used < 10000; ++s) {
        auto syn = syndrome_from_errors(g, sample_iid(g, std::nullopt, derive_seed(106, 0, s)));
        if (syn.hamming_weight() == 0 || syn.hamming_weight() > kOracleHwCap)
            continue;
        ++used;
        add_chain_lengths(hist, t, oracle_mwpm(g, t, syn).matching);
    }
    std::int64_t total = 0;
    for (auto [hops, count] : hist)
        total += count;
    const double one = static_cast<double>(hist[1]) / static_cast<double>(total);
    report(6, "chain-length statistic", one > 0.85,
           fmt("length-1 fraction %.4f over %lld chains from %d syndromes", one, static_cast<long long>(total), used));
}

void estimator_consistency() {
    ExperimentConfig c;
    c.distance = 3;
    c.p = 0.01;
    c.predecoder = PredecoderKind::kNone;
    c.main = MainKind::kOracle;
    c.k_max = 24;
    c.shots_per_k = 100000;
    c.shots_direct = 2000000;
    c.master_seed = 107;
    Experiment e(c);
    auto direct = run_direct(e);
    auto rare = run_rare_event(e);
    const double combined = std::sqrt(direct.standard_error * direct.standard_error +
                                      rare.standard_error * rare.standard_error);
    const double gap = std::abs(direct.ler - rare.ler);
    report(7, "estimator consistency", gap <= 3 * combined,
           fmt("direct %.4e +- %.1e, rare-event %.4e +- %.1e, gap %.2f sigma", direct.ler, direct.standard_error,
               rare.ler, rare.standard_error, gap / combined));
}

void step_usage() {
    ExperimentConfig c;
    c.distance = 11;
    c.p = 1e-4;
    c.k_max = 24;
    c.shots_per_k = 5000;
    c.master_seed = 108;
    Experiment e(c);
    auto corpus = run_high_hw_corpus(e);
    auto usage = report_step_usage(corpus, c, e.graph().num_edges());
    g_budget_checked += corpus.total.high_hw_decoded;
    g_budget_violations += corpus.total.budget_violations;
    const double s1 = usage.weighted[static_cast<size_t>(Step::kIsolated)];
    report(8, "step-usage dominance", s1 > 0.95,
           fmt("weighted Step-1-only fraction %.4f (unweighted %.4f) over %lld decoded high-HW samples", s1,
               usage.raw[static_cast<size_t>(Step::kIsolated)], static_cast<long long>(usage.decoded)));
}

}  // namespace

int main() {
    const std::vector<std::function<void()>> criteria{matching_counts,       oracle_equivalence, predecoder_near_optimality,
                                                      coverage_guarantee,    singleton_invariants, chain_lengths,
                                                      estimator_consistency, step_usage};
    for (const auto& run : criteria) {
        auto start = std::chrono::steady_clock::now();
        run();
        std::fprintf(stderr, "  (%.1f s)\n", seconds_since(start));
    }
    report(9, "budget enforcement", g_budget_violations == 0,
           fmt("%lld non-aborted real-time decodes checked, %lld over %g ns", static_cast<long long>(g_budget_checked),
               static_cast<long long>(g_budget_violations), TimingConfig{}.budget_ns));
    std::printf("%s: %d of 9 criteria failed\n", g_failed ? "FAILED" : "PASSED", g_failed);
    return g_failed ? 1 : 0;
}
