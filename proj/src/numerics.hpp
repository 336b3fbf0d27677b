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

namespace gbf {

// Eigendecomposition of a Hermitian matrix, eigenvalues sorted descending,
// eigenvector columns orthonormal: A = V diag(lambda) V^H.
struct EigResult {
    std::vector<double> eigenvalues;
    CMat eigenvectors;
};

// Cyclic Jacobi with complex Givens rotations. Input must be square and
// Hermitian to within 1e-9 relative Frobenius (std::invalid_argument
// otherwise); more than 100 sweeps raises numeric_error.
EigResult hermitian_eig(const CMat &a);

struct DominantSingular {
    cvec v;           // unit-norm dominant right singular vector, length cols
    double sigma_max; // largest singular value, >= 0
};

// Dominant right singular pair of H via the eigendecomposition of H^H H.
// Phase fixed so the first entry of v with magnitude > 1e-9 is real and
// non-negative. An all-zero H returns sigma_max = 0 with v = e1.
DominantSingular dominant_right_singular_vector(const CMat &h);

// Kronecker product; composite row index is row(a)*rows(b) + row(b).
// Requests above kKronEntryCap entries raise std::length_error.
inline constexpr size_t kKronEntryCap = size_t(1) << 24;
CMat kron(const CMat &a, const CMat &b);

// Factor F = P sqrt(Omega) of a Hermitian PSD matrix R = P Omega P^H, so
// F F^H = R. Eigenvalues in [-1e-6*lambda_max, 0) are clamped to zero;
// anything lower means the input is not PSD (std::invalid_argument).
CMat psd_factor(const CMat &r);

} // namespace gbf
