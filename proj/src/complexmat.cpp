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

#include "complexmat.hpp"

#include <cmath>
#include <stdexcept>

namespace gbf {

CMat CMat::identity(int n) {
    CMat e(n, n);
    for (int i = 0; i < n; i++)
        e(i, i) = cx(1.0, 0.0);
    return e;
}

CMat CMat::adjoint() const {
    CMat a(cols_, rows_);
    for (int r = 0; r < rows_; r++)
        for (int c = 0; c < cols_; c++)
            a(c, r) = std::conj((*this)(r, c));
    return a;
}

CMat operator*(const CMat &a, const CMat &b) {
    if (a.cols() != b.rows())
        throw std::invalid_argument("matrix product: inner dimensions do not match");
    CMat c(a.rows(), b.cols());
    for (int i = 0; i < a.rows(); i++) {
        for (int k = 0; k < a.cols(); k++) {
            const cx aik = a(i, k);
            if (aik == cx(0.0, 0.0))
                continue;
            const cx *brow = b.row(k);
            cx *crow = c.row(i);
            for (int j = 0; j < b.cols(); j++)
                crow[j] += aik * brow[j];
        }
    }
    return c;
}

CMat operator+(const CMat &a, const CMat &b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw std::invalid_argument("matrix sum: dimensions do not match");
    CMat c = a;
    for (size_t i = 0; i < c.data().size(); i++)
        c.data()[i] += b.data()[i];
    return c;
}

CMat operator-(const CMat &a, const CMat &b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw std::invalid_argument("matrix difference: dimensions do not match");
    CMat c = a;
    for (size_t i = 0; i < c.data().size(); i++)
        c.data()[i] -= b.data()[i];
    return c;
}

cvec operator*(const CMat &a, const cvec &x) {
    if (static_cast<size_t>(a.cols()) != x.size())
        throw std::invalid_argument("matrix-vector product: dimensions do not match");
    cvec y(a.rows());
    for (int i = 0; i < a.rows(); i++) {
        const cx *arow = a.row(i);
        cx acc(0.0, 0.0);
        for (int j = 0; j < a.cols(); j++)
            acc += arow[j] * x[j];
        y[i] = acc;
    }
    return y;
}

cx trace(const CMat &a) {
    cx t(0.0, 0.0);
    const int n = a.rows() < a.cols() ? a.rows() : a.cols();
    for (int i = 0; i < n; i++)
        t += a(i, i);
    return t;
}

double frobenius_norm(const CMat &a) {
    double s = 0.0;
    for (const cx &v : a.data())
        s += std::norm(v);
    return std::sqrt(s);
}

bool is_hermitian(const CMat &a, double rel_tol) {
    if (a.rows() != a.cols())
        return false;
    double diff2 = 0.0, ref2 = 0.0;
    for (int r = 0; r < a.rows(); r++) {
        for (int c = 0; c < a.cols(); c++) {
            diff2 += std::norm(a(r, c) - std::conj(a(c, r)));
            ref2 += std::norm(a(r, c));
        }
    }
    return diff2 <= rel_tol * rel_tol * ref2 + 1e-300;
}

bool all_finite(const CMat &a) { return all_finite(a.data()); }

bool all_finite(const cvec &v) {
    for (const cx &z : v)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
            return false;
    return true;
}

double vec_norm(const cvec &v) {
    double s = 0.0;
    for (const cx &z : v)
        s += std::norm(z);
    return std::sqrt(s);
}

cx inner(const cvec &a, const cvec &b) {
    if (a.size() != b.size())
        throw std::invalid_argument("inner product: dimensions do not match");
    cx s(0.0, 0.0);
    for (size_t i = 0; i < a.size(); i++)
        s += std::conj(a[i]) * b[i];
    return s;
}

} // namespace gbf
