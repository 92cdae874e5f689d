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

#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "rtm/graph.h"
#include "rtm/harness.h"
#include "rtm/main_decoder.h"
#include "rtm/noise.h"
#include "rtm/oracle.h"
#include "rtm/path_table.h"
#include "rtm/predecoder.h"

namespace {

struct Options {
    rtm::ExperimentConfig config;
    std::string predecoder = "promatch";
    std::string main = "brute";
    bool fixed_target = false;
    bool serial = false;
    std::string format = "json";
    std::string output = "-";
    std::string input = "-";
    std::string graph_file;
    std::string ler_mode = "direct";
    std::int64_t samples = 10000;
    int inject_k = -1;
};

void add_code_flags(CLI::App* cmd, Options& o) {
    cmd->add_option("--distance", o.config.distance, "Code distance (odd, >= 3)")->capture_default_str();
    cmd->add_option("--rounds", o.config.rounds, "Syndrome rounds (0 = distance)")->capture_default_str();
    cmd->add_option("--p", o.config.p, "Physical error probability per edge")->capture_default_str();
}

void add_decoder_flags(CLI::App* cmd, Options& o) {
    cmd->add_option("--predecoder", o.predecoder, "promatch | greedy | none")->capture_default_str();
    cmd->add_option("--main", o.main, "brute (HW <= 10) | oracle (HW <= 14)")->capture_default_str();
    cmd->add_option("--hw-target", o.config.hw_target, "Residual Hamming weight target")->capture_default_str();
    cmd->add_flag("--fixed-target", o.fixed_target, "Abort instead of predecoding past the target");
    cmd->add_option("--budget-ns", o.config.budget_ns, "Real-time budget")->capture_default_str();
    cmd->add_option("--clock-mhz", o.config.clock_mhz, "Pipeline clock")->capture_default_str();
    cmd->add_option("--cycles-per-matching", o.config.cycles_per_matching, "Main decoder latency model")
        ->capture_default_str();
}

void add_run_flags(CLI::App* cmd, Options& o) {
    cmd->add_option("--k-max", o.config.k_max, "Largest injected error count")->capture_default_str();
    cmd->add_option("--shots-per-k", o.config.shots_per_k, "Trials per injected error count")->capture_default_str();
    cmd->add_option("--shots-direct", o.config.shots_direct, "Trials for direct sampling")->capture_default_str();
    cmd->add_option("--master-seed", o.config.master_seed, "Seed from which trial seeds derive")
        ->capture_default_str();
    cmd->add_flag("--serial", o.serial, "Run trials on one thread");
}

void add_output_flags(CLI::App* cmd, Options& o) {
    cmd->add_option("--format", o.format, "json | csv")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
    cmd->add_option("--output,-o", o.output, "Output path, - for stdout")->capture_default_str();
}

void finalize(Options& o) {
    o.config.predecoder = rtm::parse_predecoder(o.predecoder);
    o.config.main = rtm::parse_main(o.main);
    o.config.adaptive = !o.fixed_target;
    o.config.parallel = !o.serial;
}

class Output {
  public:
    explicit Output(const std::string& path) {
        if (path != "-") {
            file_ = std::make_unique<std::ofstream>(path);
            if (!*file_)
                throw std::runtime_error("cannot open " + path);
        }
    }
    std::ostream& stream() { return file_ ? *file_ : std::cout; }

  private:
    std::unique_ptr<std::ofstream> file_;
};

void emit(Options& o, const nlohmann::json& json, const std::string& csv) {
    Output out(o.output);
    if (o.format == "csv")
        out.stream() << csv;
    else
        out.stream() << json.dump(2) << '\n';
}

int cmd_build_graph(Options& o) {
    finalize(o);
    auto graph = rtm::build_decoding_graph(o.config.distance, o.config.effective_rounds(), o.config.p);
    Output out(o.output);
    out.stream() << rtm::graph_to_json(graph).dump(2) << '\n';
    return 0;
}

int cmd_sample(Options& o) {
    finalize(o);
    auto graph = rtm::build_decoding_graph(o.config.distance, o.config.effective_rounds(), o.config.p);
    Output out(o.output);
    for (std::int64_t i = 0; i < o.samples; ++i) {
        auto seed = rtm::derive_seed(o.config.master_seed, 0, static_cast<std::uint64_t>(i));
        auto errors = o.inject_k >= 0 ? rtm::inject_k_errors(graph, o.inject_k, seed)
                                      : rtm::sample_iid(graph, std::nullopt, seed);
        out.stream() << rtm::sample_to_json(errors, rtm::syndrome_from_errors(graph, errors)).dump() << '\n';
    }
    return 0;
}

int cmd_decode(Options& o) {
    finalize(o);
    rtm::DetectorGraph graph;
    if (!o.graph_file.empty()) {
        std::ifstream in(o.graph_file);
        if (!in)
            throw std::runtime_error("cannot open " + o.graph_file);
        graph = rtm::graph_from_json(nlohmann::json::parse(in));
    } else {
        graph = rtm::build_decoding_graph(o.config.distance, o.config.effective_rounds(), o.config.p);
    }
    const rtm::PathTable table = rtm::build_path_table(graph);
    const auto pre_cfg = o.config.predecoder_config();
    const auto dec_cfg = o.config.decoder_config();

    std::ifstream file;
    std::istream* in = &std::cin;
    if (o.input != "-") {
        file.open(o.input);
        if (!file)
            throw std::runtime_error("cannot open " + o.input);
        in = &file;
    }
    Output out(o.output);
    std::string line;
    while (std::getline(*in, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos)
            continue;
        rtm::Syndrome s = rtm::syndrome_from_json(nlohmann::json::parse(line));
        for (int v : s.flipped)
            if (v < 0 || v >= graph.num_detectors())
                throw std::invalid_argument("syndrome references unknown detector " + std::to_string(v));
        std::optional<rtm::PredecodeResult> pre;
        if (o.config.predecoder == rtm::PredecoderKind::kAdaptive)
            pre = rtm::predecode(graph, table, s, pre_cfg);
        else if (o.config.predecoder == rtm::PredecoderKind::kGreedy)
            pre = rtm::greedy_baseline(graph, s, pre_cfg);

        nlohmann::json result;
        const int to_match = pre ? pre->residual.hamming_weight() : s.hamming_weight();
        if ((pre && pre->aborted) || to_match <= dec_cfg.hw_cap) {
            result = rtm::outcome_to_json(rtm::decode(graph, table, s, pre, dec_cfg));
        } else {
            result = {{"pairs", nlohmann::json::array()}, {"boundary", nlohmann::json::array()},
                      {"weight", nullptr},                {"failure", true},
                      {"cycles_total", pre ? pre->cycles : 0}, {"aborted", true},
                      {"error", "residual Hamming weight exceeds main decoder capacity"}};
        }
        if (pre)
            result["predecode"] = rtm::predecode_to_json(*pre);
        out.stream() << result.dump() << '\n';
    }
    return 0;
}

int cmd_estimate(Options& o) {
    finalize(o);
    rtm::Experiment experiment(o.config);
    rtm::LerEstimate est = o.ler_mode == "rare" ? rtm::run_rare_event(experiment) : rtm::run_direct(experiment);
    emit(o, rtm::ler_to_json(est, o.config), rtm::ler_to_csv(est));
    return 0;
}

int cmd_hw_dist(Options& o) {
    finalize(o);
    rtm::Experiment experiment(o.config);
    auto dist = rtm::report_hw_distribution(rtm::run_high_hw_corpus(experiment));
    emit(o, rtm::hw_distribution_to_json(dist, o.config), rtm::hw_distribution_to_csv(dist));
    return 0;
}

int cmd_latency(Options& o) {
    finalize(o);
    rtm::Experiment experiment(o.config);
    auto corpus = rtm::run_high_hw_corpus(experiment);
    auto report = rtm::report_latency(corpus, o.config, experiment.graph().num_edges());
    emit(o, rtm::latency_to_json(report, o.config), rtm::latency_to_csv(report));
    return 0;
}

int cmd_steps(Options& o) {
    finalize(o);
    rtm::Experiment experiment(o.config);
    auto corpus = rtm::run_high_hw_corpus(experiment);
    auto usage = rtm::report_step_usage(corpus, o.config, experiment.graph().num_edges());
    emit(o, rtm::step_usage_to_json(usage, o.config), rtm::step_usage_to_csv(usage));
    return 0;
}

int cmd_chain_lengths(Options& o) {
    finalize(o);
    rtm::Experiment experiment(o.config);
    const auto& graph = experiment.graph();
    rtm::ChainHistogram hist;
    std::int64_t kept = 0;
    for (std::int64_t i = 0; kept < o.samples && i < o.samples * 100000; ++i) {
        auto errors = rtm::sample_iid(graph, o.config.p, rtm::derive_seed(o.config.master_seed, 0, i));
        auto s = rtm::syndrome_from_errors(graph, errors);
        if (s.flipped.empty() || s.hamming_weight() > rtm::kOracleHwCap)
            continue;
        rtm::add_chain_lengths(hist, experiment.table(), rtm::oracle_mwpm(graph, experiment.table(), s).matching);
        ++kept;
    }
    nlohmann::json j = {{"schema_version", rtm::kSchemaVersion},
                        {"kind", "chain_lengths"},
                        {"config", rtm::config_to_json(o.config)},
                        {"syndromes", kept}};
    for (auto [hops, count] : hist)
        j["counts"][std::to_string(hops)] = count;
    emit(o, j, rtm::histogram_csv(hist));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Real-time surface-code decoding with adaptive predecoding"};
    app.require_subcommand(1);
    Options o;

    auto* build = app.add_subcommand("build-graph", "Emit the decoding graph as JSON");
    add_code_flags(build, o);
    build->add_option("--output,-o", o.output, "Output path, - for stdout");

    auto* sample = app.add_subcommand("sample", "Emit sampled error sets and syndromes as JSON lines");
    add_code_flags(sample, o);
    sample->add_option("--count", o.samples, "Number of samples")->capture_default_str();
    sample->add_option("--inject-k", o.inject_k, "Inject exactly k errors instead of i.i.d. sampling");
    sample->add_option("--master-seed", o.config.master_seed, "Seed")->capture_default_str();
    sample->add_option("--output,-o", o.output, "Output path, - for stdout");

    auto* dec = app.add_subcommand("decode", "Decode JSON-lines syndromes");
    add_code_flags(dec, o);
    add_decoder_flags(dec, o);
    dec->add_option("--graph", o.graph_file, "Graph JSON (overrides --distance/--rounds/--p)");
    dec->add_option("--input,-i", o.input, "Syndrome JSON lines, - for stdin")->capture_default_str();
    dec->add_option("--output,-o", o.output, "Output path, - for stdout");

    auto* est = app.add_subcommand("estimate-ler", "Logical error rate by direct or stratified sampling");
    est->add_option("mode", o.ler_mode, "direct | rare")->check(CLI::IsMember({"direct", "rare"}))->required();
    add_code_flags(est, o);
    add_decoder_flags(est, o);
    add_run_flags(est, o);
    add_output_flags(est, o);

    auto* hw = app.add_subcommand("hw-dist", "Hamming weight before and after predecoding");
    auto* lat = app.add_subcommand("latency", "Modeled predecode and total latency");
    auto* steps = app.add_subcommand("steps", "Deepest predecoder step per sample");
    for (auto* cmd : {hw, lat, steps}) {
        add_code_flags(cmd, o);
        add_decoder_flags(cmd, o);
        add_run_flags(cmd, o);
        add_output_flags(cmd, o);
    }

    auto* chains = app.add_subcommand("chain-lengths", "Oracle chain-length histogram");
    add_code_flags(chains, o);
    chains->add_option("--samples", o.samples, "Nonempty syndromes to collect")->capture_default_str();
    chains->add_option("--master-seed", o.config.master_seed, "Seed")->capture_default_str();
    add_output_flags(chains, o);

    CLI11_PARSE(app, argc, argv);
    try {
        if (build->parsed())
            return cmd_build_graph(o);
        if (sample->parsed())
            return cmd_sample(o);
        if (dec->parsed())
            return cmd_decode(o);
        if (est->parsed())
            return cmd_estimate(o);
        if (hw->parsed())
            return cmd_hw_dist(o);
        if (lat->parsed())
            return cmd_latency(o);
        if (steps->parsed())
            return cmd_steps(o);
        if (chains->parsed())
            return cmd_chain_lengths(o);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
