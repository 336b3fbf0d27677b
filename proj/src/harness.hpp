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

#pragma once

#include "config.hpp"

#include <map>
#include <string>
#include <vector>

namespace gbf {

// Results for one (cluster size, probability mode) combination.
struct RunMetrics {
    int G = 1;
    int M = 1;
    ProbMode mode = ProbMode::pooled;

    double baseline_bits = 0.0;           // M * log2(N), the clustering-only cost
    double adaptive_mean_bits = 0.0;      // mean message bits over all symbols and trials
    double frozen_mean_bits = 0.0;        // mean bits with converged tables frozen
    double entropy_bits_per_symbol = 0.0; // log2(N) + (M-1) * H from the converged model
    double transition_entropy = 0.0;      // H of the pooled converged transition distribution
    double noise_tolerance_bits = 0.0;    // 3 * stderr of the per-trial frozen means

    std::vector<double> convergence; // trial-averaged bits per symbol index t = 1..T
    int steady_state_t = 0;          // first t with trailing-5 mean within 5% of the final-10 mean
    double eigen_switching_rate = 0.0; // NaN when Mr < 2 or M < 2

    uint64_t total_adaptive_bits = 0; // exact sum of FeedbackMessage bit counts
    uint64_t total_frozen_bits = 0;
    uint64_t messages = 0;     // adaptive messages coded
    bool lossless_ok = false;  // decoded index vectors matched on every message
    bool sync_ok = false;      // encoder/decoder models compared equal after every message

    std::vector<double> converged_pooled; // pooled empirical transition distribution, all trials
};

struct ScenarioReport {
    std::string name;
    std::map<std::string, std::string> resolved_config;
    std::string codebook_source;
    double codebook_j = 0.0;
    double property1_deviation = 0.0;
    std::vector<RunMetrics> runs; // cluster-size major, then probability mode
    std::vector<std::string> warnings;
};

struct ExperimentReport {
    uint64_t base_seed = 0;
    int threads = 1;
    std::vector<ScenarioReport> scenarios;
};

// First t (1-based) whose trailing-5 mean is within 5% of the final-10
// mean; returns the series length when no such t exists.
int steady_state_symbol(const std::vector<double> &curve);

Codebook resolve_codebook(const CodebookSource &src);

// Runs every scenario: T adaptive symbols x trials per (G, mode) with
// lock-step encoder/decoder verification, then a frozen-table pass on a
// fresh symbol stream. Deterministic for a fixed config and seed; trials
// run in parallel when threads > 1 without changing any result.
ExperimentReport run_experiment(const ExperimentConfig &cfg, int threads = 1);

// Writes table<N>.csv (one per scenario x mode), convergence.csv,
// report.json and convergence_<scenario>.svg into `dir` (created if
// needed).
void emit_outputs(const ExperimentReport &report, const std::string &dir);

} // namespace gbf
