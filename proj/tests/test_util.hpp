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

namespace gbf::test {

inline CMat random_cmat(Rng &rng, int rows, int cols) {
    CMat m(rows, cols);
    for (cx &z : m.data())
        z = rng.cgaussian();
    return m;
}

inline CMat random_hermitian(Rng &rng, int n) {
    const CMat g = random_cmat(rng, n, n);
    CMat h(n, n);
    for (int r = 0; r < n; r++)
        for (int c = 0; c < n; c++)
            h(r, c) = 0.5 * (g(r, c) + std::conj(g(c, r)));
    return h;
}

inline cvec random_unit_vector(Rng &rng, int n) {
    cvec v(n);
    for (cx &z : v)
        z = rng.cgaussian();
    const double nrm = vec_norm(v);
    for (cx &z : v)
        z /= nrm;
    return v;
}

} // namespace gbf::test
