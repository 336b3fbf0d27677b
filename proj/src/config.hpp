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

#include "channel.hpp"
#include "codebook.hpp"
#include "feedback.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace gbf {

struct CodebookSource {
    enum class Kind { generate, file };
    Kind kind = Kind::generate;
    int mt = 4;
    int n = 64;
    uint64_t seed = 7;
    std::string path; // for Kind::file
};

// One simulation scenario: a channel description plus the sweep axes.
struct ScenarioConfig {
    static CorrelationSpec default_correlation() {
        CorrelationSpec s;
        s.L = 64;
        s.Mt = 4;
        s.Mr = 2;
        s.adjacent_corr = kLowAdjacentCorr;
        return s;
    }

    std::string name;
    CorrelationSpec correlation = default_correlation();
    std::vector<int> cluster_sizes{1};
    std::vector<ProbMode> modes{ProbMode::pooled};
    int symbols = 500;         // adaptive pass length T
    int frozen_symbols = -1;   // frozen-pass length; -1 means same as symbols
    int trials = 1;
    int rebuild_every = 1;
    int switching_symbols = 200; // symbols for the eigen switching diagnostic; 0 disables
    CodebookSource codebook;

    // The fully-resolved key/value view, echoed into reports.
    std::map<std::string, std::string> resolved() const;
};

struct ExperimentConfig {
    uint64_t base_seed = 1;
    std::vector<ScenarioConfig> scenarios;
};

// Flat key-value text with '#' comments and one [scenario <name>] section
// per scenario; keys before the first section set defaults for all
// scenarios. Relative matrix paths resolve against `base_dir`.
//
// Keys: subcarriers, tx_antennas, rx_antennas, freq_model
// (exponential|explicit), adjacent_corr (number | low | high), freq_matrix,
// spatial (none|macro|explicit), tx_matrix, rx_matrix, cluster_sizes,
// prob_mode (pooled|per_index|both), symbols, frozen_symbols, trials,
// rebuild_every, switching_symbols, codebook (generate:Mt,N,seed | path),
// seed (global only).
ExperimentConfig parse_experiment_config(const std::string &text, const std::string &origin,
                                         const std::string &base_dir);
ExperimentConfig load_experiment_config(const std::string &path);

} // namespace gbf
