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

#include <vector>

namespace gbf {

// Frequency clustering: G adjacent subcarriers share one fed-back codeword,
// giving M = L/G clusters per OFDM symbol. G must divide L.
struct ClusterConfig {
    int L = 1;
    int G = 1;
    int M = 1;

    ClusterConfig() = default;
    ClusterConfig(int l, int g);
};

// Per-symbol selection result: one codeword index (0-based) per cluster.
using IndexVector = std::vector<int>;

// Max-min-SNR selection over a cluster: argmax over codewords of the minimum
// ||H[g] v_i||^2 within the cluster. Ties resolve to the lowest index.
int select_cluster_codeword(const std::vector<CMat> &h_slice, const Codebook &cb);

// ||H(l) v_i||^2 for every subcarrier l and codeword i, flattened as
// obj[l*N + i]. Shared by the per-cluster selection and the experiment loop
// so a channel draw is scanned once for several cluster sizes.
std::vector<double> subcarrier_objectives(const ChannelTensor &ch, const Codebook &cb);

IndexVector select_from_objectives(const std::vector<double> &obj, const ClusterConfig &cfg, int n);

IndexVector select_all_clusters(const ChannelTensor &ch, const ClusterConfig &cfg, const Codebook &cb);

// Eigen-mode switching diagnostic: over neighboring cluster pairs, the
// fraction where the next cluster's dominant right singular vector (at the
// cluster's center subcarrier) is closer in |inner product| to the current
// cluster's *second* right singular vector than to its first. Needs Mr >= 2.
double eigen_switching_rate(const std::vector<ChannelTensor> &symbols, const ClusterConfig &cfg);

} // namespace gbf
