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

#include "beamform.hpp"

#include "errors.hpp"
#include "numerics.hpp"

#include <cmath>
#include <stdexcept>

namespace gbf {

ClusterConfig::ClusterConfig(int l, int g) : L(l), G(g) {
    if (l < 1 || g < 1)
        throw std::invalid_argument("ClusterConfig: L and G must be >= 1");
    if (l % g != 0)
        throw std::invalid_argument("ClusterConfig: G must divide L");
    M = l / g;
}

namespace {

// ||H v||_2^2 without forming intermediates.
double steered_power(const CMat &h, const cvec &v) {
    double p = 0.0;
    for (int r = 0; r < h.rows(); r++) {
        const cx *row = h.row(r);
        cx acc(0.0, 0.0);
        for (int s = 0; s < h.cols(); s++)
            acc += row[s] * v[s];
        p += std::norm(acc);
    }
    return p;
}

// 0-based center subcarrier of cluster m (1-based position ceil(G/2)).
int cluster_center(const ClusterConfig &cfg, int m) { return m * cfg.G + (cfg.G - 1) / 2; }

} // namespace

int select_cluster_codeword(const std::vector<CMat> &h_slice, const Codebook &cb) {
    if (h_slice.empty())
        throw std::invalid_argument("select_cluster_codeword: empty cluster");
    for (const CMat &h : h_slice)
        if (h.cols() != cb.mt)
            throw std::invalid_argument("select_cluster_codeword: channel/codebook dimension mismatch");

    int best_i = 0;
    double best = -1.0;
    for (int i = 0; i < cb.n; i++) {
        double worst = steered_power(h_slice[0], cb.vectors[i]);
        for (size_t g = 1; g < h_slice.size(); g++)
            worst = std::min(worst, steered_power(h_slice[g], cb.vectors[i]));
        if (worst > best) {
            best = worst;
            best_i = i;
        }
    }
    return best_i;
}

std::vector<double> subcarrier_objectives(const ChannelTensor &ch, const Codebook &cb) {
    if (ch.Mt() != cb.mt)
        throw std::invalid_argument("subcarrier_objectives: channel/codebook dimension mismatch");
    const int l_count = ch.L(), mr = ch.Mr(), mt = ch.Mt(), n = cb.n;
    std::vector<double> obj(static_cast<size_t>(l_count) * n);
    for (int l = 0; l < l_count; l++) {
        for (int i = 0; i < n; i++) {
            const cvec &v = cb.vectors[i];
            double p = 0.0;
            for (int r = 0; r < mr; r++) {
                cx acc(0.0, 0.0);
                for (int s = 0; s < mt; s++)
                    acc += ch.at(r, s, l) * v[s];
                p += std::norm(acc);
            }
            obj[static_cast<size_t>(l) * n + i] = p;
        }
    }
    return obj;
}

IndexVector select_from_objectives(const std::vector<double> &obj, const ClusterConfig &cfg, int n) {
    if (obj.size() != static_cast<size_t>(cfg.L) * n)
        throw std::invalid_argument("select_from_objectives: objective buffer size mismatch");
    IndexVector iv(cfg.M);
    for (int m = 0; m < cfg.M; m++) {
        int best_i = 0;
        double best = -1.0;
        for (int i = 0; i < n; i++) {
            double worst = obj[static_cast<size_t>(m * cfg.G) * n + i];
            for (int g = 1; g < cfg.G; g++)
                worst = std::min(worst, obj[static_cast<size_t>(m * cfg.G + g) * n + i]);
            if (worst > best) {
                best = worst;
                best_i = i;
            }
        }
        iv[m] = best_i;
    }
    return iv;
}

IndexVector select_all_clusters(const ChannelTensor &ch, const ClusterConfig &cfg, const Codebook &cb) {
    if (ch.L() != cfg.L)
        throw std::invalid_argument("select_all_clusters: cluster config does not match channel");
    return select_from_objectives(subcarrier_objectives(ch, cb), cfg, cb.n);
}

double eigen_switching_rate(const std::vector<ChannelTensor> &symbols, const ClusterConfig &cfg) {
    if (symbols.empty())
        throw std::invalid_argument("eigen_switching_rate: no symbols");
    if (symbols[0].Mr() < 2)
        throw std::invalid_argument("eigen_switching_rate: needs Mr >= 2");
    if (cfg.M < 2)
        throw std::invalid_argument("eigen_switching_rate: needs at least 2 clusters");

    uint64_t events = 0, pairs = 0;
    for (const ChannelTensor &ch : symbols) {
        // Top-2 right singular vectors at each cluster center.
        std::vector<cvec> v1(cfg.M), v2(cfg.M);
        for (int m = 0; m < cfg.M; m++) {
            const CMat h = ch.subcarrier_matrix(cluster_center(cfg, m));
            const EigResult eig = hermitian_eig(h.adjoint() * h);
            v1[m].resize(ch.Mt());
            v2[m].resize(ch.Mt());
            for (int r = 0; r < ch.Mt(); r++) {
                v1[m][r] = eig.eigenvectors(r, 0);
                v2[m][r] = eig.eigenvectors(r, 1);
            }
        }
        for (int m = 0; m + 1 < cfg.M; m++) {
            const double to_first = std::abs(inner(v1[m + 1], v1[m]));
            const double to_second = std::abs(inner(v1[m + 1], v2[m]));
            if (to_second > to_first)
                events++;
            pairs++;
        }
    }
    return static_cast<double>(events) / static_cast<double>(pairs);
}

} // namespace gbf
