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
#include "test_util.hpp"

#include <doctest.h>

#include <cmath>

using namespace gbf;

namespace {

CorrelationSpec spec_of(int l, int mt, int mr, double rho) {
    CorrelationSpec s;
    s.L = l;
    s.Mt = mt;
    s.Mr = mr;
    s.adjacent_corr = rho;
    return s;
}

// 2x2 spatial correlation in the style of the RX macro preset.
CMat spatial_2x2() { return spatial_correlation_macro_rx(); }

} // namespace

TEST_SUITE("channel") {

    TEST_CASE("freq correlation: zero magnitude is the exact identity") {
        const CMat r = build_freq_correlation(spec_of(8, 1, 1, 0.0));
        CHECK(r == CMat::identity(8));
    }

    TEST_CASE("freq correlation: adjacent magnitude constraint") {
        const CMat r = build_freq_correlation(spec_of(16, 1, 1, 0.95));
        for (int n = 0; n + 1 < 16; n++)
            CHECK(std::abs(r(n, n + 1)) == doctest::Approx(0.95).epsilon(1e-9));
        CHECK(is_hermitian(r, 1e-12));
        for (int n = 0; n < 16; n++)
            CHECK(r(n, n) == cx(1.0, 0.0));
    }

    TEST_CASE("freq correlation: magnitudes decay monotonically") {
        const CMat r = build_freq_correlation(spec_of(16, 1, 1, 0.9));
        for (int n = 0; n < 16; n++)
            for (int m = n + 1; m + 1 < 16; m++)
                CHECK(std::abs(r(n, m)) > std::abs(r(n, m + 1)));
    }

    TEST_CASE("freq correlation: explicit matrix must be PSD") {
        CorrelationSpec s = spec_of(2, 1, 1, 0.0);
        s.freq_model = FreqModel::explicit_matrix;
        CMat bad(2, 2);
        bad(0, 0) = 1.0;
        bad(1, 1) = 1.0;
        bad(0, 1) = 2.0; // |corr| > 1, indefinite
        bad(1, 0) = 2.0;
        s.freq_matrix = bad;
        CHECK_THROWS_AS(build_freq_correlation(s), std::invalid_argument);
    }

    TEST_CASE("full correlation: identity factors") {
        const CMat r = build_full_correlation(CMat::identity(3), CMat::identity(2), CMat::identity(2));
        CHECK(r == CMat::identity(12));
    }

    TEST_CASE("full correlation: entrywise kron oracle, L=2 Mt=2 Mr=1") {
        const CMat r_f = build_freq_correlation(spec_of(2, 2, 1, 0.8));
        CMat r_t(2, 2);
        r_t(0, 0) = r_t(1, 1) = 1.0;
        r_t(0, 1) = cx(0.3, 0.4);
        r_t(1, 0) = std::conj(r_t(0, 1));
        const CMat r = build_full_correlation(r_f, r_t, CMat::identity(1));
        REQUIRE(r.rows() == 4);
        for (int a = 0; a < 2; a++)
            for (int b = 0; b < 2; b++)
                for (int c = 0; c < 2; c++)
                    for (int d = 0; d < 2; d++)
                        CHECK(r(a * 2 + c, b * 2 + d) == r_f(a, b) * r_t(c, d));
    }

    TEST_CASE("full correlation: trace equals dimension for unit diagonals") {
        const CMat r_f = build_freq_correlation(spec_of(4, 2, 2, 0.6));
        const CMat r = build_full_correlation(r_f, spatial_correlation_macro_tx(), spatial_correlation_macro_rx());
        CHECK(trace(r).real() == doctest::Approx(4 * 4 * 2).epsilon(1e-12));
    }

    TEST_CASE("macro spatial matrices pass PSD construction") {
        CHECK_NOTHROW(psd_factor(spatial_correlation_macro_tx()));
        CHECK_NOTHROW(psd_factor(spatial_correlation_macro_rx()));
        const CMat r_f = build_freq_correlation(spec_of(8, 4, 2, 0.9));
        CHECK_NOTHROW(psd_factor(build_full_correlation(r_f, spatial_correlation_macro_tx(),
                                                        spatial_correlation_macro_rx())));
    }

    TEST_CASE("sampler reproduces its correlation factor") {
        CorrelationSpec s = spec_of(4, 2, 2, 0.7);
        s.spatial_model = SpatialModel::explicit_matrices;
        s.r_tx = spatial_2x2();
        s.r_rx = spatial_2x2();
        const ChannelSampler cs(s);
        const CMat r = build_full_correlation(cs.freq_correlation(), *s.r_tx, *s.r_rx);
        const CMat ffh = cs.factor() * cs.factor().adjoint();
        CHECK(frobenius_norm(ffh - r) <= 1e-8 * frobenius_norm(r));
    }

    TEST_CASE("white channel: unit variance per entry") {
        const ChannelSampler cs(spec_of(4, 2, 2, 0.0));
        Rng rng(321);
        const int draws = 10000;
        std::vector<double> acc(16, 0.0);
        for (int d = 0; d < draws; d++) {
            const ChannelTensor t = cs.sample(rng);
            for (int i = 0; i < 16; i++)
                acc[i] += std::norm(t.data()[i]);
        }
        for (int i = 0; i < 16; i++)
            CHECK(acc[i] / draws == doctest::Approx(1.0).epsilon(0.05));
    }

    TEST_CASE("rank-1 frequency correlation: identical subcarriers") {
        CorrelationSpec s = spec_of(4, 1, 2, 0.0);
        s.freq_model = FreqModel::explicit_matrix;
        CMat ones(4, 4);
        for (cx &z : ones.data())
            z = cx(1.0, 0.0);
        s.freq_matrix = ones;
        const ChannelSampler cs(s);
        Rng rng(5);
        for (int d = 0; d < 20; d++) {
            const ChannelTensor t = cs.sample(rng);
            for (int l = 1; l < 4; l++)
                for (int r = 0; r < 2; r++)
                    CHECK(std::abs(t.at(r, 0, l) - t.at(r, 0, 0)) < 1e-9);
        }
    }

    TEST_CASE("empirical correlation: single deterministic sample") {
        ChannelTensor t(1, 1, 3);
        t.data() = {cx(1.0, 0.5), cx(-0.3, 0.2), cx(0.0, -1.0)};
        const CMat r = empirical_correlation({t, t}, CorrelationMode::frequency);
        for (int a = 0; a < 3; a++)
            for (int b = 0; b < 3; b++)
                CHECK(std::abs(r(a, b) - t.data()[a] * std::conj(t.data()[b])) < 1e-15);
    }

    TEST_CASE("empirical correlation: white channel off-diagonals vanish") {
        const ChannelSampler cs(spec_of(4, 2, 2, 0.0));
        Rng rng(17);
        std::vector<ChannelTensor> samples;
        samples.reserve(10000);
        for (int d = 0; d < 10000; d++)
            samples.push_back(cs.sample(rng));
        const CMat r = empirical_correlation(samples, CorrelationMode::frequency);
        for (int a = 0; a < 4; a++)
            for (int b = 0; b < 4; b++)
                if (a != b)
                    CHECK(std::abs(r(a, b)) < 0.05);
    }

    TEST_CASE("empirical correlation matches the target R_f") {
        CorrelationSpec s = spec_of(8, 2, 2, 0.9);
        s.spatial_model = SpatialModel::explicit_matrices;
        s.r_tx = spatial_2x2();
        s.r_rx = spatial_2x2();
        const ChannelSampler cs(s);
        Rng rng(99);
        std::vector<ChannelTensor> samples;
        samples.reserve(2000);
        for (int d = 0; d < 2000; d++)
            samples.push_back(cs.sample(rng));
        const CMat r = empirical_correlation(samples, CorrelationMode::frequency);
        CHECK(frobenius_norm(r - cs.freq_correlation()) / frobenius_norm(cs.freq_correlation()) < 0.15);
    }

    TEST_CASE("empirical correlation converges with sample count") {
        const CorrelationSpec s = spec_of(4, 2, 2, 0.7);
        const ChannelSampler cs(s);
        const CMat target = cs.freq_correlation();
        int improved = 0;
        for (int rep = 0; rep < 10; rep++) {
            Rng rng = Rng::stream(4242, rep);
            std::vector<ChannelTensor> samples;
            samples.reserve(1200);
            for (int d = 0; d < 1200; d++)
                samples.push_back(cs.sample(rng));
            const std::vector<ChannelTensor> head(samples.begin(), samples.begin() + 300);
            const double err_n = frobenius_norm(empirical_correlation(head, CorrelationMode::frequency) - target);
            const double err_4n = frobenius_norm(empirical_correlation(samples, CorrelationMode::frequency) - target);
            if (err_4n < err_n)
                improved++;
        }
        CHECK(improved >= 8);
    }

    TEST_CASE("empirical correlation rejects empty input") {
        CHECK_THROWS_AS(empirical_correlation({}, CorrelationMode::frequency), std::invalid_argument);
    }

    TEST_CASE("sampling is bit-reproducible per seed and stream") {
        const ChannelSampler cs(spec_of(4, 2, 2, 0.5));
        Rng a = Rng::stream(7, 3), b = Rng::stream(7, 3), c = Rng::stream(7, 4);
        const ChannelTensor ta = cs.sample(a), tb = cs.sample(b), tc = cs.sample(c);
        CHECK(ta == tb);
        CHECK(ta.data() != tc.data());
    }

    TEST_CASE("vec/devec round trip") {
        const ChannelSampler cs(spec_of(3, 2, 2, 0.4));
        Rng rng(11);
        const ChannelTensor t = cs.sample(rng);
        const ChannelTensor back = devectorize(vectorize(t), 2, 2, 3);
        CHECK(back == t);
        CHECK_THROWS_AS(devectorize(cvec(5), 2, 2, 3), std::invalid_argument);
    }

    TEST_CASE("full-mode empirical correlation approaches the joint matrix") {
        CorrelationSpec s = spec_of(2, 2, 1, 0.6);
        const ChannelSampler cs(s);
        const CMat target = build_full_correlation(cs.freq_correlation(), CMat::identity(2), CMat::identity(1));
        Rng rng(31);
        std::vector<ChannelTensor> samples;
        samples.reserve(20000);
        for (int d = 0; d < 20000; d++)
            samples.push_back(cs.sample(rng));
        const CMat r = empirical_correlation(samples, CorrelationMode::full);
        CHECK(frobenius_norm(r - target) / frobenius_norm(target) < 0.1);
    }
}
