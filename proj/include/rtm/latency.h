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

#ifndef RTM_LATENCY_H
#define RTM_LATENCY_H

#include <cmath>
#include <cstdint>

namespace rtm {

/// Perfect matchings the brute-force main decoder scans at Hamming weight
/// `hw`: (m-1)!! with m = hw rounded up to even (odd syndromes are padded
/// with one boundary node). 945 at hw = 10.
std::int64_t matchings_for_latency(int hw);

/// Cycle cost of the main decoder as a function of residual Hamming weight.
///
/// The default is calibrated so that HW 10 (945 matchings) costs 114 cycles,
/// i.e. 456 ns at 250 MHz.
struct MainLatencyModel {
    double cycles_per_matching = 114.0 / 945.0;

    std::int64_t cycles(int hw) const {
        if (hw <= 0)
            return 0;
        return static_cast<std::int64_t>(
            std::ceil(static_cast<double>(matchings_for_latency(hw)) * cycles_per_matching - 1e-9));
    }
};

/// Real-time budget in nanoseconds at a fixed clock.
struct TimingConfig {
    double budget_ns = 960.0;
    double clock_mhz = 250.0;
    MainLatencyModel main_latency;

    std::int64_t budget_cycles() const {
        return static_cast<std::int64_t>(std::floor(budget_ns * clock_mhz / 1000.0 + 1e-9));
    }
    double to_ns(std::int64_t cycles) const { return static_cast<double>(cycles) * 1000.0 / clock_mhz; }
    /// Predecode cycles plus the main decoder on `hw` residual bits.
    bool fits(std::int64_t predecode_cycles, int hw) const {
        return predecode_cycles + main_latency.cycles(hw) <= budget_cycles();
    }
};

}  // namespace rtm

#endif  // RTM_LATENCY_H
