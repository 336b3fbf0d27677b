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

#include "numerics.hpp"

#include "errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace gbf {

namespace {

constexpr int kMaxSweeps = 100;

double off_diagonal_norm(const CMat &a) {
    double s = 0.0;
    for (int r = 0; r < a.rows(); r++)
        for (int c = 0; c < a.cols(); c++)
            if (r != c)
                s += std::norm(a(r, c));
    return std::sqrt(s);
}

// One complex Jacobi rotation zeroing a(p,q). The unitary has
// J(p,p)=J(q,q)=c, J(p,q)=sigma, J(q,p)=-conj(sigma) with c real and
// sigma = s*exp(i*phi), phi the phase of a(p,q). A stays Hermitian, so only
// rows p and q are transformed and columns p and q are mirrored by
// conjugation; vt holds the eigenvector matrix transposed so its updates
// are row-contiguous too.
void apply_rotation(CMat &a, CMat &vt, int p, int q, double c, cx sigma, double t_times_r) {
    const int n = a.rows();
    const cx sigmac = std::conj(sigma);
    const double app = a(p, p).real();
    const double aqq = a(q, q).real();

    cx *rp = a.row(p);
    cx *rq = a.row(q);
    for (int k = 0; k < n; k++) {
        const cx akp = rp[k];
        const cx akq = rq[k];
        rp[k] = c * akp - sigma * akq;
        rq[k] = sigmac * akp + c * akq;
    }
    rp[p] = cx(app - t_times_r, 0.0);
    rq[q] = cx(aqq + t_times_r, 0.0);
    rp[q] = cx(0.0, 0.0);
    rq[p] = cx(0.0, 0.0);
    for (int k = 0; k < n; k++) {
        if (k == p || k == q)
            continue;
        cx *row = a.row(k);
        row[p] = std::conj(rp[k]);
        row[q] = std::conj(rq[k]);
    }

    cx *wp = vt.row(p);
    cx *wq = vt.row(q);
    for (int k = 0; k < n; k++) {
        const cx vkp = wp[k];
        const cx vkq = wq[k];
        wp[k] = c * vkp - sigmac * vkq;
        wq[k] = sigma * vkp + c * vkq;
    }
}

} // namespace

EigResult hermitian_eig(const CMat &input) {
    if (input.rows() != input.cols())
        throw std::invalid_argument("hermitian_eig: matrix is not square");
    if (!is_hermitian(input, 1e-9))
        throw std::invalid_argument("hermitian_eig: matrix is not Hermitian");

    const int n = input.rows();

    // Work on the exactly-Hermitian part so roundoff asymmetry cannot grow.
    CMat a(n, n);
    for (int r = 0; r < n; r++)
        for (int c = 0; c < n; c++)
            a(r, c) = 0.5 * (input(r, c) + std::conj(input(c, r)));

    CMat vt = CMat::identity(n); // eigenvector matrix, stored transposed
    const double scale = frobenius_norm(a);
    const double stop = 1e-12 * (scale > 0.0 ? scale : 1.0);
    // Rotations this small cannot push the off-diagonal norm above `stop`
    // even if every pair sits at the threshold.
    const double skip = stop / (4.0 * n);

    if (n > 1) {
        bool converged = false;
        for (int sweep = 0; sweep < kMaxSweeps; sweep++) {
            if (off_diagonal_norm(a) <= stop) {
                converged = true;
                break;
            }
            for (int p = 0; p < n - 1; p++) {
                for (int q = p + 1; q < n; q++) {
                    const cx apq = a(p, q);
                    const double r = std::abs(apq);
                    if (r <= skip)
                        continue;
                    const double app = a(p, p).real();
                    const double aqq = a(q, q).real();

                    const double tau = (aqq - app) / (2.0 * r);
                    const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                    const double c = 1.0 / std::sqrt(1.0 + t * t);
                    const double s = t * c;
                    const cx sigma = s * (apq / r);

                    apply_rotation(a, vt, p, q, c, sigma, t * r);
                }
            }
        }
        if (!converged && off_diagonal_norm(a) > stop)
            throw numeric_error("hermitian_eig: Jacobi did not converge within 100 sweeps");
    }

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int i, int j) { return a(i, i).real() > a(j, j).real(); });

    EigResult out;
    out.eigenvalues.resize(n);
    out.eigenvectors = CMat(n, n);
    for (int k = 0; k < n; k++) {
        out.eigenvalues[k] = a(order[k], order[k]).real();
        const cx *src = vt.row(order[k]);
        for (int r = 0; r < n; r++)
            out.eigenvectors(r, k) = src[r];
    }
    return out;
}

DominantSingular dominant_right_singular_vector(const CMat &h) {
    if (h.rows() < 1 || h.cols() < 1)
        throw std::invalid_argument("dominant_right_singular_vector: empty matrix");

    const int mt = h.cols();
    DominantSingular out;
    out.v.assign(mt, cx(0.0, 0.0));

    if (frobenius_norm(h) == 0.0) {
        out.v[0] = cx(1.0, 0.0);
        out.sigma_max = 0.0;
        return out;
    }

    const CMat b = h.adjoint() * h; // Mt x Mt Gram matrix
    const EigResult eig = hermitian_eig(b);
    out.sigma_max = std::sqrt(std::max(eig.eigenvalues[0], 0.0));
    for (int r = 0; r < mt; r++)
        out.v[r] = eig.eigenvectors(r, 0);

    // Unit norm, then phase: first entry with magnitude > 1e-9 made real >= 0.
    const double nrm = vec_norm(out.v);
    for (cx &z : out.v)
        z /= nrm;
    for (int r = 0; r < mt; r++) {
        const double m = std::abs(out.v[r]);
        if (m > 1e-9) {
            const cx rot = std::conj(out.v[r]) / m;
            for (cx &z : out.v)
                z *= rot;
            out.v[r] = cx(std::abs(out.v[r]), 0.0);
            break;
        }
    }
    return out;
}

CMat kron(const CMat &a, const CMat &b) {
    const size_t rows = static_cast<size_t>(a.rows()) * b.rows();
    const size_t cols = static_cast<size_t>(a.cols()) * b.cols();
    if (rows * cols > kKronEntryCap)
        throw std::length_error("kron: result exceeds the entry cap");

    CMat c(static_cast<int>(rows), static_cast<int>(cols));
    for (int ia = 0; ia < a.rows(); ia++) {
        for (int ja = 0; ja < a.cols(); ja++) {
            const cx w = a(ia, ja);
            if (w == cx(0.0, 0.0))
                continue;
            for (int ib = 0; ib < b.rows(); ib++) {
                cx *crow = c.row(ia * b.rows() + ib);
                const cx *brow = b.row(ib);
                for (int jb = 0; jb < b.cols(); jb++)
                    crow[static_cast<size_t>(ja) * b.cols() + jb] = w * brow[jb];
            }
        }
    }
    return c;
}

CMat psd_factor(const CMat &r) {
    const EigResult eig = hermitian_eig(r);
    const int n = r.rows();
    const double lmax = eig.eigenvalues.empty() ? 0.0 : std::max(eig.eigenvalues[0], 0.0);

    std::vector<double> roots(n);
    for (int k = 0; k < n; k++) {
        double lambda = eig.eigenvalues[k];
        if (lambda < -1e-6 * lmax)
            throw std::invalid_argument("psd_factor: matrix is not positive semidefinite");
        roots[k] = std::sqrt(std::max(lambda, 0.0));
    }

    CMat f = eig.eigenvectors;
    for (int row = 0; row < n; row++)
        for (int col = 0; col < n; col++)
            f(row, col) *= roots[col];
    return f;
}

} // namespace gbf
