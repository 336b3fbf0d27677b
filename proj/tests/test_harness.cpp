// SPDX-License-Identifier: Apache-2.0
//
// gbfsim - limited-feedback beamforming simulator for MIMO-OFDM
// Copyright (C) 2026 gbfsim developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "harness.hpp"

#include "errors.hpp"

#include <doctest.h>
#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace gbf;

namespace {

const char *kTinyConfig = R"(
seed = 11
trials = 3

[scenario tiny]
subcarriers = 8
tx_antennas = 2
rx_antennas = 2
adjacent_corr = 0.9
cluster_sizes = 1, 2, 4
prob_mode = both
symbols = 40
codebook = generate:2,8,5
switching_symbols = 10
)";

std::string read_file(const std::string &path) {
    std::ifstream in(path);
    REQUIRE(in);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string fresh_dir(const std::string &name) {
    const std::string dir = "/tmp/gbfsim_harness_" + name;
    std::filesystem::remove_all(dir);
    return dir;
}

} // namespace

TEST_SUITE("harness") {

    TEST_CASE("config: defaults, sections and echo") {
        const ExperimentConfig cfg = parse_experiment_config(kTinyConfig, "<test>", ".");
        CHECK(cfg.base_seed == 11);
        REQUIRE(cfg.scenarios.size() == 1);
        const ScenarioConfig &sc = cfg.scenarios[0];
        CHECK(sc.name == "tiny");
        CHECK(sc.trials == 3); // inherited from the global section
        CHECK(sc.correlation.L == 8);
        CHECK(sc.cluster_sizes == std::vector<int>{1, 2, 4});
        CHECK(sc.modes.size() == 2);
        const auto echo = sc.resolved();
        CHECK(echo.at("symbols") == "40");
        CHECK(echo.at("frozen_symbols") == "40"); // default echoed explicitly
        CHECK(echo.at("codebook") == "generate:2,8,5");
        CHECK(echo.at("trials") == "3");
    }

    TEST_CASE("config: named correlation profiles resolve to the presets") {
        const char *text = R"(
[scenario a]
adjacent_corr = low
codebook = generate:4,64,7
[scenario b]
adjacent_corr = high
codebook = generate:4,64,7
)";
        const ExperimentConfig cfg = parse_experiment_config(text, "<test>", ".");
        CHECK(cfg.scenarios[0].correlation.adjacent_corr == kLowAdjacentCorr);
        CHECK(cfg.scenarios[1].correlation.adjacent_corr == kHighAdjacentCorr);
    }

    TEST_CASE("config: errors are reported before any simulation") {
        CHECK_THROWS_AS(parse_experiment_config("x = 1\n", "<t>", "."), config_error);              // no scenario
        CHECK_THROWS_AS(parse_experiment_config("[scenario a]\nbogus = 1\n", "<t>", "."), config_error);
        CHECK_THROWS_AS(parse_experiment_config("[scenario a]\ncluster_sizes = 3\n", "<t>", "."), config_error);
        CHECK_THROWS_AS(parse_experiment_config("[scenario a]\nsubcarriers = nope\n", "<t>", "."), config_error);
        CHECK_THROWS_AS(parse_experiment_config("[scenario a]\nseed = 4\n", "<t>", "."), config_error);
        CHECK_THROWS_AS(parse_experiment_config("[scenario a]\n[scenario a]\n", "<t>", "."), config_error);
        CHECK_THROWS_AS(parse_experiment_config("[scenario a]\ncodebook = generate:4,63,7\n", "<t>", "."),
                        config_error);
        CHECK_THROWS_AS(parse_experiment_config("[scenario a]\nspatial = macro\ntx_antennas = 2\n", "<t>", "."),
                        config_error);
    }

    TEST_CASE("steady state detector") {
        // Flat curve: steady immediately (at the first full window).
        CHECK(steady_state_symbol(std::vector<double>(20, 10.0)) == 5);
        // Step at t = 11 (0-based index 10): trailing-5 windows that span
        // the step stay off; detection lands once the window clears it.
        std::vector<double> step(30, 100.0);
        for (size_t t = 10; t < step.size(); t++)
            step[t] = 50.0;
        const int t_ss = steady_state_symbol(step);
        CHECK(t_ss >= 11);
        CHECK(t_ss <= 16);
    }

    TEST_CASE("run_experiment: verification, accounting and ordering") {
        const ExperimentConfig cfg = parse_experiment_config(kTinyConfig, "<test>", ".");
        const ExperimentReport rep = run_experiment(cfg, 2);
        REQUIRE(rep.scenarios.size() == 1);
        const ScenarioReport &sr = rep.scenarios[0];
        REQUIRE(sr.runs.size() == 6); // 3 cluster sizes x 2 modes
        CHECK(sr.codebook_j > 0.0);

        for (const RunMetrics &rm : sr.runs) {
            CHECK(rm.lossless_ok);
            CHECK(rm.sync_ok);
            CHECK(rm.baseline_bits == rm.M * 3.0); // log2(8) = 3
            // Exact bit accounting: the mean must reproduce the totals.
            CHECK(rm.adaptive_mean_bits * 40.0 * 3.0 == doctest::Approx(double(rm.total_adaptive_bits)).epsilon(1e-12));
            CHECK(rm.messages == 40 * 3);
            // Adaptive >= frozen >= entropy bound, within reported noise.
            const double tol = rm.noise_tolerance_bits + 0.75;
            CHECK(rm.adaptive_mean_bits >= rm.frozen_mean_bits - tol);
            CHECK(rm.frozen_mean_bits >= rm.entropy_bits_per_symbol - tol);
            CHECK(rm.convergence.size() == 40);
            CHECK(rm.steady_state_t >= 1);
        }

        // Baselines halve exactly as G doubles; mode rows agree on them.
        CHECK(sr.runs[0].baseline_bits == 24.0);
        CHECK(sr.runs[2].baseline_bits == 12.0);
        CHECK(sr.runs[4].baseline_bits == 6.0);

        // The switching diagnostic is a probability when defined.
        for (const RunMetrics &rm : sr.runs) {
            if (rm.M >= 2) {
                CHECK(rm.eigen_switching_rate >= 0.0);
                CHECK(rm.eigen_switching_rate <= 1.0);
            } else {
                CHECK(std::isnan(rm.eigen_switching_rate));
            }
        }
    }

    TEST_CASE("run_experiment: deterministic and thread-count invariant") {
        const ExperimentConfig cfg = parse_experiment_config(kTinyConfig, "<test>", ".");
        const ExperimentReport a = run_experiment(cfg, 1);
        const ExperimentReport b = run_experiment(cfg, 3);
        REQUIRE(a.scenarios[0].runs.size() == b.scenarios[0].runs.size());
        for (size_t r = 0; r < a.scenarios[0].runs.size(); r++) {
            const RunMetrics &ra = a.scenarios[0].runs[r];
            const RunMetrics &rb = b.scenarios[0].runs[r];
            CHECK(ra.total_adaptive_bits == rb.total_adaptive_bits);
            CHECK(ra.total_frozen_bits == rb.total_frozen_bits);
            CHECK(ra.convergence == rb.convergence);
            CHECK(ra.converged_pooled == rb.converged_pooled);
        }
    }

    TEST_CASE("run_experiment: degenerate all-self-transition channel") {
        const char *cfg_text = R"(
seed = 3
[scenario flat]
subcarriers = 8
tx_antennas = 2
rx_antennas = 2
adjacent_corr = 0.999999
cluster_sizes = 1
symbols = 40
trials = 2
codebook = generate:2,8,5
)";
        const ExperimentConfig cfg = parse_experiment_config(cfg_text, "<test>", ".");
        const ExperimentReport rep = run_experiment(cfg, 1);
        const RunMetrics &rm = rep.scenarios[0].runs[0];
        // Near-perfect correlation: transitions almost always 0, so the
        // curve falls toward log2(N) + (M-1) bits.
        CHECK(rm.convergence.back() < 12.0); // 3 + 7 = 10 at the limit
        CHECK(rm.steady_state_t <= 15);
    }

    TEST_CASE("run_experiment: warns below 30 symbols") {
        const char *cfg_text = R"(
[scenario short]
subcarriers = 4
tx_antennas = 2
rx_antennas = 2
cluster_sizes = 1
symbols = 10
codebook = generate:2,4,5
)";
        const ExperimentConfig cfg = parse_experiment_config(cfg_text, "<test>", ".");
        const ExperimentReport rep = run_experiment(cfg, 1);
        REQUIRE(rep.scenarios[0].warnings.size() == 1);
        CHECK(rep.scenarios[0].warnings[0].find("30") != std::string::npos);
    }

    TEST_CASE("emit_outputs: files, exact parse-back and golden determinism") {
        const ExperimentConfig cfg = parse_experiment_config(kTinyConfig, "<test>", ".");
        const ExperimentReport rep = run_experiment(cfg, 2);

        const std::string dir_a = fresh_dir("a");
        const std::string dir_b = fresh_dir("b");
        emit_outputs(rep, dir_a);
        emit_outputs(run_experiment(cfg, 1), dir_b);

        for (const char *name : {"table1.csv", "table2.csv", "convergence.csv", "report.json", "convergence_tiny.svg"})
            CHECK(std::filesystem::exists(dir_a + "/" + name));

        // Byte-identical outputs across two runs with the same seed.
        for (const char *name : {"table1.csv", "table2.csv", "convergence.csv", "report.json"})
            CHECK(read_file(dir_a + "/" + name) == read_file(dir_b + "/" + name));

        // CSV parse-back reproduces the in-memory values exactly.
        std::ifstream csv(dir_a + "/table1.csv");
        std::string header, line;
        std::getline(csv, header);
        CHECK(header == "G,baseline_bits,huffman_bits_frozen,huffman_bits_adaptive,entropy");
        size_t row = 0;
        const ScenarioReport &sr = rep.scenarios[0];
        std::vector<const RunMetrics *> pooled_runs;
        for (const RunMetrics &rm : sr.runs)
            if (rm.mode == ProbMode::pooled)
                pooled_runs.push_back(&rm);
        while (std::getline(csv, line)) {
            REQUIRE(row < pooled_runs.size());
            std::replace(line.begin(), line.end(), ',', ' ');
            std::istringstream ss(line);
            int g = 0;
            double base = 0, frozen = 0, adaptive = 0, entropy = 0;
            ss >> g >> base >> frozen >> adaptive >> entropy;
            CHECK(g == pooled_runs[row]->G);
            CHECK(base == pooled_runs[row]->baseline_bits);
            CHECK(frozen == pooled_runs[row]->frozen_mean_bits);
            CHECK(adaptive == pooled_runs[row]->adaptive_mean_bits);
            CHECK(entropy == pooled_runs[row]->entropy_bits_per_symbol);
            row++;
        }
        CHECK(row == pooled_runs.size());

        // report.json is valid JSON and echoes the resolved config.
        const nlohmann::json j = nlohmann::json::parse(read_file(dir_a + "/report.json"));
        CHECK(j["base_seed"] == 11);
        CHECK(j["scenarios"][0]["config"]["frozen_symbols"] == "40");
        CHECK(j["scenarios"][0]["runs"].size() == 6);
        CHECK(j["tables"].size() == 2);
    }

    TEST_CASE("emit_outputs: a report with no runs yields header-only CSVs") {
        ExperimentReport rep;
        rep.base_seed = 1;
        ScenarioReport sr;
        sr.name = "empty";
        rep.scenarios.push_back(sr);
        const std::string dir = fresh_dir("empty");
        emit_outputs(rep, dir);
        CHECK(read_file(dir + "/convergence.csv") == "t\n");
        CHECK(std::filesystem::exists(dir + "/report.json"));
    }

    TEST_CASE("huffman bits do not increase with cluster size") {
        const char *cfg_text = R"(
seed = 21
[scenario sweep]
subcarriers = 16
tx_antennas = 2
rx_antennas = 2
adjacent_corr = 0.95
cluster_sizes = 1, 2, 4, 8
symbols = 60
trials = 20
codebook = generate:2,16,5
switching_symbols = 0
)";
        const ExperimentConfig cfg = parse_experiment_config(cfg_text, "<test>", ".");
        const ExperimentReport rep = run_experiment(cfg, 2);
        const std::vector<RunMetrics> &runs = rep.scenarios[0].runs;
        for (size_t r = 1; r < runs.size(); r++) {
            CHECK(runs[r].baseline_bits == runs[r - 1].baseline_bits / 2.0);
            CHECK(runs[r].frozen_mean_bits <=
                  runs[r - 1].frozen_mean_bits + runs[r - 1].noise_tolerance_bits + runs[r].noise_tolerance_bits);
        }
    }
}
