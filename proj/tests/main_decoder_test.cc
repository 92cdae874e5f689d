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

#include "rtm/main_decoder.h"

#include <chrono>
#include <gtest/gtest.h>
#include <stdexcept>

#include "test_util.h"

using namespace rtm;
using rtm::testing::boundary_of;
using rtm::testing::HandEdge;
using rtm::testing::make_graph;

namespace {

DetectorGraph line(int n, bool with_boundary) {
    std::vector<HandEdge> spec;
    for (int i = 0; i + 1 < n; ++i)
        spec.push_back({i, i + 1, 0.1});
    if (with_boundary)
        for (int i = 0; i < n; ++i)
            spec.push_back({i, -1, 0.05});
    return make_graph(n, spec);
}

std::vector<int> first(int m) {
    std::vector<int> v;
    for (int i = 0; i < m; ++i)
        v.push_back(i);
    return v;
}

}  // namespace

TEST(BruteForce, PerfectMatchingCounts) {
    auto g = line(10, false);
    auto t = build_path_table(g);
    const std::int64_t expected[] = {1, 3, 15, 105, 945};
    for (int m = 2; m <= 10; m += 2) {
        auto r = brute_force_mwpm(first(m), t, {.hw_cap = 10, .allow_boundary = false, .prune = false});
        EXPECT_EQ(r.enumerated, expected[m / 2 - 1]) << "m=" << m;
        EXPECT_EQ(matchings_for_latency(m), expected[m / 2 - 1]);
    }
}

TEST(BruteForce, UnreachableBoundaryGivesDoubleFactorial) {
    // No boundary edges at all: the table itself reports the boundary as unreachable.
    auto g = line(10, false);
    auto t = build_path_table(g);
    auto r = brute_force_mwpm(first(10), t, {.hw_cap = 10, .allow_boundary = true, .prune = false});
    EXPECT_EQ(r.enumerated, 945);
    EXPECT_TRUE(r.boundary_matches.empty());
}

TEST(BruteForce, WithBoundaryCountsInvolutions) {
    auto g = line(10, true);
    auto t = build_path_table(g);
    std::int64_t prev = 1, cur = 1;  // involution numbers I(0), I(1)
    for (int m = 1; m <= 10; ++m) {
        auto r = brute_force_mwpm(first(m), t, {.hw_cap = 10, .allow_boundary = true, .prune = false});
        EXPECT_EQ(r.enumerated, cur) << "m=" << m;
        std::int64_t next = cur + m * prev;
        prev = cur;
        cur = next;
    }
}

TEST(BruteForce, PruningKeepsResult) {
    auto g = build_decoding_graph(5, 5, 0.01);
    auto t = build_path_table(g);
    for (std::uint64_t s = 0; s < 200; ++s) {
        auto syn = syndrome_from_errors(g, inject_k_errors(g, 5, derive_seed(41, 0, s)));
        if (syn.hamming_weight() > 10)
            continue;
        auto a = brute_force_mwpm(syn.flipped, t, {.prune = true});
        auto b = brute_force_mwpm(syn.flipped, t, {.prune = false});
        ASSERT_EQ(a.pairs, b.pairs);
        ASSERT_EQ(a.boundary_matches, b.boundary_matches);
        ASSERT_LE(a.enumerated, b.enumerated);
    }
}

TEST(BruteForce, TwoNodesPairIffCheaper) {
    for (double pb : {0.01, 0.1, 0.3}) {
        auto g = make_graph(2, {{0, 1, 0.05}, {0, -1, pb}, {1, -1, pb}});
        auto t = build_path_table(g);
        auto r = brute_force_mwpm(first(2), t);
        const double w = -std::log(0.05), W = -std::log(pb);
        if (w < 2 * W) {
            EXPECT_EQ(r.pairs.size(), 1u);
            EXPECT_NEAR(r.total_weight, w, 1e-12);
        } else {
            EXPECT_EQ(r.boundary_matches.size(), 2u);
            EXPECT_NEAR(r.total_weight, 2 * W, 1e-12);
        }
    }
}

TEST(BruteForce, FourInLineMatchesIndependentChecker) {
    auto g = line(4, true);
    auto t = build_path_table(g);
    auto r = brute_force_mwpm(first(4), t, {.prune = false});
    EXPECT_EQ(r.enumerated, 10);
    EXPECT_NEAR(r.total_weight, rtm::testing::table_dp_weight(t, first(4)), 1e-12);
    // Pairs (0,1) and (2,3) with two light edges win.
    EXPECT_EQ(r.pairs, (std::vector<std::pair<int, int>>{{0, 1}, {2, 3}}));
}

TEST(BruteForce, RandomInstancesMatchSubsetDp) {
    auto g = build_decoding_graph(5, 5, 0.004);
    auto t = build_path_table(g);
    for (std::uint64_t s = 0; s < 500; ++s) {
        auto syn = syndrome_from_errors(g, inject_k_errors(g, 2 + static_cast<int>(s % 6), derive_seed(42, 0, s)));
        if (syn.hamming_weight() > 10)
            continue;
        auto r = brute_force_mwpm(syn.flipped, t);
        ASSERT_NEAR(r.total_weight, rtm::testing::table_dp_weight(t, syn.flipped), 1e-9);
        std::vector<int> covered;
        for (auto [a, b] : r.pairs) {
            ASSERT_LT(a, b);
            covered.push_back(a);
            covered.push_back(b);
        }
        covered.insert(covered.end(), r.boundary_matches.begin(), r.boundary_matches.end());
        std::sort(covered.begin(), covered.end());
        ASSERT_EQ(covered, syn.flipped);
    }
}

TEST(BruteForce, CapAndInfeasible) {
    auto g = line(12, true);
    auto t = build_path_table(g);
    EXPECT_THROW(brute_force_mwpm(first(11), t), std::invalid_argument);
    EXPECT_NO_THROW(brute_force_mwpm(first(11), t, {.hw_cap = 14}));
    auto odd = line(3, false);
    auto to = build_path_table(odd);
    EXPECT_THROW(brute_force_mwpm(first(3), to), std::invalid_argument);
}

TEST(BruteForce, TenNodesUnderOneSecond) {
    auto g = line(10, false);
    auto t = build_path_table(g);
    auto start = std::chrono::steady_clock::now();
    for (int i = 0; i < 100; ++i)
        brute_force_mwpm(first(10), t, {.hw_cap = 10, .allow_boundary = false, .prune = false});
    EXPECT_LT(std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count(), 1.0);
}

TEST(Decode, EmptySyndrome) {
    auto g = build_decoding_graph(3, 3, 0.01);
    auto t = build_path_table(g);
    auto out = decode(g, t, Syndrome{});
    EXPECT_FALSE(out.logical_failure);
    EXPECT_FALSE(out.predicted_observable);
    EXPECT_TRUE(out.matching.pairs.empty());
    EXPECT_EQ(out.main_cycles, 0);
}

TEST(Decode, SingleBoundaryError) {
    auto g = make_graph(2, {{0, -1, 0.01, true}, {0, 1, 0.01}, {1, -1, 0.001}});
    auto t = build_path_table(g);
    auto syn = syndrome_from_errors(g, ErrorSet{{0}});
    ASSERT_EQ(syn.flipped, (std::vector<int>{0}));
    auto out = decode(g, t, syn);
    EXPECT_EQ(out.matching.boundary_matches, (std::vector<int>{0}));
    EXPECT_EQ(out.correction_edges, (std::vector<int>{0}));
    EXPECT_FALSE(out.logical_failure);
}

TEST(Decode, CorrectsEveryWeightOneAndTwoError) {
    auto g = build_decoding_graph(5, 5, 0.01);
    auto t = build_path_table(g);
    const int n = g.num_edges();
    for (int a = 0; a < n; ++a) {
        auto single = syndrome_from_errors(g, ErrorSet{{a}});
        ASSERT_FALSE(decode(g, t, single).logical_failure) << a;
        for (int b = a + 1; b < n; ++b) {
            ErrorSet e{{a, b}};
            auto syn = syndrome_from_errors(g, e);
            auto out = decode(g, t, syn);
            ASSERT_FALSE(out.logical_failure) << a << "," << b;
            // Correction plus error is a cycle: no detector left flipped.
            std::vector<int> all = out.correction_edges;
            all.insert(all.end(), e.edge_ids.begin(), e.edge_ids.end());
            ASSERT_TRUE(boundary_of(g, xor_edges(all)).empty());
        }
    }
}

TEST(Decode, PureFunction) {
    auto g = build_decoding_graph(5, 5, 0.01);
    auto t = build_path_table(g);
    for (std::uint64_t s = 0; s < 50; ++s) {
        auto syn = syndrome_from_errors(g, inject_k_errors(g, 4, derive_seed(43, 0, s)));
        auto a = decode(g, t, syn);
        auto b = decode(g, t, syn);
        ASSERT_EQ(a.correction_edges, b.correction_edges);
        ASSERT_EQ(a.logical_failure, b.logical_failure);
        ASSERT_EQ(outcome_to_json(a), outcome_to_json(b));
    }
}

TEST(Decode, AbortedPredecodeFails) {
    auto g = build_decoding_graph(3, 3, 0.01);
    auto t = build_path_table(g);
    PredecodeResult pre;
    pre.aborted = true;
    auto out = decode(g, t, Syndrome{}, pre);
    EXPECT_TRUE(out.aborted);
    EXPECT_TRUE(out.logical_failure);
}

TEST(Decode, CapViolationThrows) {
    auto g = build_decoding_graph(5, 5, 0.01);
    auto t = build_path_table(g);
    Syndrome s;
    for (int i = 0; i < 12; ++i)
        s.flipped.push_back(i * 4);
    EXPECT_THROW(decode(g, t, s), std::invalid_argument);
}

TEST(Decode, XorEdgesReducesParity) {
    EXPECT_EQ(xor_edges({3, 1, 3, 2, 1, 1}), (std::vector<int>{1, 2}));
    EXPECT_TRUE(xor_edges({}).empty());
}

TEST(Decode, LatencyModelHitsCalibrationPoint) {
    MainLatencyModel model;
    EXPECT_EQ(model.cycles(10), 114);
    EXPECT_EQ(model.cycles(9), 114);
    EXPECT_EQ(model.cycles(0), 0);
    TimingConfig timing;
    EXPECT_EQ(timing.budget_cycles(), 240);
    EXPECT_DOUBLE_EQ(timing.to_ns(114), 456.0);
    EXPECT_EQ(matchings_for_latency(14), 135135);
}

TEST(Decode, JsonShape) {
    auto g = build_decoding_graph(3, 3, 0.01);
    auto t = build_path_table(g);
    auto syn = syndrome_from_errors(g, ErrorSet{{1, 2}});
    auto doc = outcome_to_json(decode(g, t, syn));
    for (const char* key : {"pairs", "boundary", "weight", "failure", "cycles_total", "aborted"})
        EXPECT_TRUE(doc.contains(key)) << key;
}
