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

#include "channel.hpp"

#include "errors.hpp"
#include "numerics.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>
#include <string>

namespace gbf {

namespace {

const cx kMacroA(0.4640, 0.8499);
const cx kMacroB(-0.4802, 0.7421);
const cx kMacroC(-0.7688, -0.0625);

void check_unit_diag_hermitian(const CMat &m, const char *what) {
    if (m.rows() != m.cols())
        throw std::invalid_argument(std::string(what) + ": matrix is not square");
    if (!is_hermitian(m, 1e-9))
        throw std::invalid_argument(std::string(what) + ": matrix is not Hermitian");
    for (int i = 0; i < m.rows(); i++)
        if (std::abs(m(i, i) - cx(1.0, 0.0)) > 1e-9)
            throw std::invalid_argument(std::string(what) + ": diagonal entries must be 1");
}

} // namespace

CMat spatial_correlation_macro_tx() {
    CMat r(4, 4);
    const cx row[4] = {cx(1.0, 0.0), kMacroA, kMacroB, kMacroC};
    for (int i = 0; i < 4; i++) {
        for (int j = 0; j < 4; j++) {
            const int d = j - i;
            r(i, j) = d >= 0 ? row[d] : std::conj(row[-d]);
        }
    }
    return r;
}

CMat spatial_correlation_macro_rx() {
    CMat r(2, 2);
    r(0, 0) = cx(1.0, 0.0);
    r(0, 1) = kMacroA;
    r(1, 0) = std::conj(kMacroA);
    r(1, 1) = cx(1.0, 0.0);
    return r;
}

CMat ChannelTensor::subcarrier_matrix(int l) const {
    CMat h(mr_, mt_);
    for (int r = 0; r < mr_; r++)
        for (int s = 0; s < mt_; s++)
            h(r, s) = at(r, s, l);
    return h;
}

CMat build_freq_correlation(const CorrelationSpec &spec) {
    if (spec.L < 1)
        throw std::invalid_argument("build_freq_correlation: L must be >= 1");

    if (spec.freq_model == FreqModel::explicit_matrix) {
        if (!spec.freq_matrix)
            throw std::invalid_argument("build_freq_correlation: explicit model without a matrix");
        const CMat &m = *spec.freq_matrix;
        if (m.rows() != spec.L)
            throw std::invalid_argument("build_freq_correlation: explicit matrix size does not match L");
        check_unit_diag_hermitian(m, "build_freq_correlation");
        psd_factor(m); // PSD check; throws std::invalid_argument otherwise
        return m;
    }

    const double rho = spec.adjacent_corr;
    if (!(rho >= 0.0 && rho < 1.0))
        throw std::invalid_argument("build_freq_correlation: adjacent correlation must be in [0, 1)");
    if (rho == 0.0)
        return CMat::identity(spec.L);

    // theta = 2*pi*df*tau solved from |1/(1 + j*theta)| = rho.
    const double theta = std::sqrt(1.0 / (rho * rho) - 1.0);
    CMat r(spec.L, spec.L);
    for (int n = 0; n < spec.L; n++)
        for (int m = 0; m < spec.L; m++)
            r(n, m) = 1.0 / cx(1.0, theta * (n - m));
    return r;
}

CMat build_full_correlation(const CMat &r_f, const CMat &r_t, const CMat &r_r) {
    check_unit_diag_hermitian(r_f, "build_full_correlation (frequency factor)");
    check_unit_diag_hermitian(r_t, "build_full_correlation (TX factor)");
    check_unit_diag_hermitian(r_r, "build_full_correlation (RX factor)");
    return kron(r_f, kron(r_t, r_r));
}

namespace {

std::string factor_cache_key(const CorrelationSpec &spec, const CMat &r_f, const CMat &r_t, const CMat &r_r) {
    std::string key;
    auto append = [&key](const void *p, size_t bytes) { key.append(static_cast<const char *>(p), bytes); };
    const int dims[3] = {spec.L, spec.Mt, spec.Mr};
    append(dims, sizeof(dims));
    for (const CMat *m : {&r_f, &r_t, &r_r})
        append(m->data().data(), m->data().size() * sizeof(cx));
    return key;
}

std::mutex g_factor_mutex;
std::map<std::string, std::shared_ptr<const CMat>> g_factor_cache;

std::shared_ptr<const CMat> cached_psd_factor(const CorrelationSpec &spec, const CMat &r_f, const CMat &r_t,
                                              const CMat &r_r) {
    const std::string key = factor_cache_key(spec, r_f, r_t, r_r);
    {
        std::lock_guard<std::mutex> lock(g_factor_mutex);
        auto it = g_factor_cache.find(key);
        if (it != g_factor_cache.end())
            return it->second;
    }
    auto factor = std::make_shared<const CMat>(psd_factor(build_full_correlation(r_f, r_t, r_r)));
    std::lock_guard<std::mutex> lock(g_factor_mutex);
    return g_factor_cache.emplace(key, std::move(factor)).first->second;
}

} // namespace

ChannelSampler::ChannelSampler(const CorrelationSpec &spec) : spec_(spec) {
    if (spec.L < 1 || spec.Mt < 1 || spec.Mr < 1)
        throw std::invalid_argument("ChannelSampler: dimensions must be >= 1");

    r_f_ = build_freq_correlation(spec);

    CMat r_t = CMat::identity(spec.Mt);
    CMat r_r = CMat::identity(spec.Mr);
    if (spec.spatial_model == SpatialModel::explicit_matrices) {
        if (!spec.r_tx || !spec.r_rx)
            throw std::invalid_argument("ChannelSampler: explicit spatial model without matrices");
        r_t = *spec.r_tx;
        r_r = *spec.r_rx;
        if (r_t.rows() != spec.Mt || r_r.rows() != spec.Mr)
            throw std::invalid_argument("ChannelSampler: spatial matrix size does not match antenna count");
    }

    f_ = cached_psd_factor(spec, r_f_, r_t, r_r);
}

ChannelTensor ChannelSampler::sample(Rng &rng) const {
    const size_t n = static_cast<size_t>(spec_.L) * spec_.Mt * spec_.Mr;
    cvec x(n);
    for (cx &z : x)
        z = rng.cgaussian();

    const cvec y = *f_ * x;
    return devectorize(y, spec_.Mr, spec_.Mt, spec_.L);
}

CMat empirical_correlation(const std::vector<ChannelTensor> &samples, CorrelationMode mode) {
    if (samples.empty())
        throw std::invalid_argument("empirical_correlation: no samples");

    const int mr = samples[0].Mr(), mt = samples[0].Mt(), l = samples[0].L();
    for (const ChannelTensor &t : samples)
        if (t.Mr() != mr || t.Mt() != mt || t.L() != l)
            throw std::invalid_argument("empirical_correlation: samples have mixed dimensions");

    if (mode == CorrelationMode::frequency) {
        CMat acc(l, l);
        cvec h(l);
        for (const ChannelTensor &t : samples) {
            for (int s = 0; s < mt; s++) {
                for (int r = 0; r < mr; r++) {
                    for (int k = 0; k < l; k++)
                        h[k] = t.at(r, s, k);
                    for (int a = 0; a < l; a++) {
                        const cx ha = h[a];
                        cx *row = acc.row(a);
                        for (int b = 0; b < l; b++)
                            row[b] += ha * std::conj(h[b]);
                    }
                }
            }
        }
        const double scale = 1.0 / (static_cast<double>(samples.size()) * mr * mt);
        for (cx &z : acc.data())
            z *= scale;
        return acc;
    }

    const int n = l * mt * mr;
    CMat acc(n, n);
    for (const ChannelTensor &t : samples) {
        const cvec &y = t.data();
        for (int a = 0; a < n; a++) {
            const cx ya = y[a];
            cx *row = acc.row(a);
            for (int b = 0; b < n; b++)
                row[b] += ya * std::conj(y[b]);
        }
    }
    const double scale = 1.0 / static_cast<double>(samples.size());
    for (cx &z : acc.data())
        z *= scale;
    return acc;
}

cvec vectorize(const ChannelTensor &t) { return t.data(); }

ChannelTensor devectorize(const cvec &y, int mr, int mt, int l) {
    if (y.size() != static_cast<size_t>(mr) * mt * l)
        throw std::invalid_argument("devectorize: vector length does not match dimensions");
    ChannelTensor t(mr, mt, l);
    t.data() = y;
    return t;
}

} // namespace gbf
