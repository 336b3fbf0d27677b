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

#include <complex>
#include <cstdint>
#include <random>

namespace gbf {

// splitmix64 round function, used to whiten seeds and to derive independent
// stream seeds from (base_seed, stream_id).
inline uint64_t splitmix64(uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// Stream-splitting rule: worker/stream k draws from a generator seeded with
// mix_seed(base_seed, k). Streams are reproducible and order-independent,
// which keeps parallel Monte-Carlo runs bit-identical to serial ones.
inline uint64_t mix_seed(uint64_t base_seed, uint64_t stream_id) {
    return splitmix64(splitmix64(base_seed) ^ splitmix64(stream_id * 0xD1342543DE82EF95ULL + 1));
}

// Deterministic generator: mt19937_64 core (bit-identical across platforms
// by the standard) with a hand-rolled Box-Muller Gaussian, because the
// stdlib distributions are implementation-defined.
class Rng {
  public:
    explicit Rng(uint64_t seed) : gen_(splitmix64(seed)) {}

    static Rng stream(uint64_t base_seed, uint64_t stream_id) { return Rng(mix_seed(base_seed, stream_id)); }

    uint64_t next_u64() { return gen_(); }

    // Uniform in [0, 1), 53-bit resolution.
    double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    // Standard normal via Box-Muller; the second value of each pair is cached.
    double gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform();
        while (u1 <= 0.0)
            u1 = uniform();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

    // Circularly-symmetric complex Gaussian, unit variance: CN(0, 1).
    std::complex<double> cgaussian() {
        const double s = 0.70710678118654752440084436210485; // 1/sqrt(2)
        const double re = gaussian();
        const double im = gaussian();
        return {re * s, im * s};
    }

  private:
    std::mt19937_64 gen_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

} // namespace gbf
