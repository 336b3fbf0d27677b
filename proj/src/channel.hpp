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

#include "complexmat.hpp"
#include "rng.hpp"

#include <memory>
#include <optional>
#include <vector>

namespace gbf {

enum class FreqModel { exponential_pdp, explicit_matrix };
enum class SpatialModel { none, explicit_matrices };

// Joint frequency/spatial correlation description for one OFDM symbol's
// channel. Explicit matrices must be Hermitian PSD with unit diagonal.
struct CorrelationSpec {
    int L = 1;  // subcarriers
    int Mt = 1; // transmit antennas
    int Mr = 1; // receive antennas

    FreqModel freq_model = FreqModel::exponential_pdp;
    double adjacent_corr = 0.0; // |corr| between adjacent subcarriers, in [0, 1)
    std::optional<CMat> freq_matrix;

    SpatialModel spatial_model = SpatialModel::none;
    std::optional<CMat> r_tx;
    std::optional<CMat> r_rx;
};

// Calibrated exponential-PDP presets for the "low" and "high" frequency
// correlation scenarios (adjacent-subcarrier correlation magnitude). The
// low value is set so that, with the default generated codebook and G = 1,
// about 35% of neighboring clusters keep the same codeword; the high value
// is set so entropy coding cuts the G = 1 feedback by roughly a factor 3.
inline constexpr double kLowAdjacentCorr = 0.91;
inline constexpr double kHighAdjacentCorr = 0.995;

// Transmit/receive spatial correlation of the 3GPP SCM macro-cell scenario
// (Laplacian power azimuth spectrum, 5 degree azimuth spread), 4 TX / 2 RX.
CMat spatial_correlation_macro_tx();
CMat spatial_correlation_macro_rx();

// One OFDM symbol's channel: complex gain per (rx antenna, tx antenna,
// subcarrier). Storage order matches the vec/devec convention below.
class ChannelTensor {
  public:
    ChannelTensor() = default;
    ChannelTensor(int mr, int mt, int l) : mr_(mr), mt_(mt), l_(l), g_(static_cast<size_t>(mr) * mt * l) {}

    int Mr() const { return mr_; }
    int Mt() const { return mt_; }
    int L() const { return l_; }

    // Flat index ((l*Mt)+s)*Mr + r: subcarrier slowest, rx antenna fastest.
    cx &at(int r, int s, int l) { return g_[(static_cast<size_t>(l) * mt_ + s) * mr_ + r]; }
    const cx &at(int r, int s, int l) const { return g_[(static_cast<size_t>(l) * mt_ + s) * mr_ + r]; }

    cvec &data() { return g_; }
    const cvec &data() const { return g_; }

    CMat subcarrier_matrix(int l) const; // Mr x Mt channel of subcarrier l

    bool operator==(const ChannelTensor &other) const = default;

  private:
    int mr_ = 0, mt_ = 0, l_ = 0;
    cvec g_;
};

// L x L frequency correlation matrix. The exponential-PDP model uses
// [R_f]_{n,m} = 1 / (1 + j*theta*(n-m)) with theta solved so the adjacent
// off-diagonal magnitude equals spec.adjacent_corr; magnitude 0 returns the
// identity exactly.
CMat build_freq_correlation(const CorrelationSpec &spec);

// R = R_f kron (R_t kron R_r); identity factors are substituted for absent
// spatial correlation.
CMat build_full_correlation(const CMat &r_f, const CMat &r_t, const CMat &r_r);

// Correlated channel generator: caches the PSD factor F of the full
// correlation matrix once, then each sample draws i.i.d. CN(0,1) x and
// devectorizes F*x. Factorizing the full (L*Mt*Mr)^2 matrix is the one
// expensive step, so results are memoized process-wide keyed on the exact
// spec bytes; construction is thread-safe.
class ChannelSampler {
  public:
    explicit ChannelSampler(const CorrelationSpec &spec);

    const CorrelationSpec &spec() const { return spec_; }
    const CMat &freq_correlation() const { return r_f_; }
    const CMat &factor() const { return *f_; }

    ChannelTensor sample(Rng &rng) const;

  private:
    CorrelationSpec spec_;
    CMat r_f_;
    std::shared_ptr<const CMat> f_;
};

enum class CorrelationMode { frequency, full };

// Sample average of h h^H. Frequency mode averages over draws and over all
// (r, s) antenna pairs; full mode averages vec(H) vec(H)^H.
CMat empirical_correlation(const std::vector<ChannelTensor> &samples, CorrelationMode mode);

// vec/devec round-trip helpers for the flat index convention above.
cvec vectorize(const ChannelTensor &t);
ChannelTensor devectorize(const cvec &y, int mr, int mt, int l);

} // namespace gbf
