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
#include <vector>

namespace gbf {

using cx = std::complex<double>;
using cvec = std::vector<cx>;

// Dense complex matrix, row-major. Small sizes only (the largest matrix in
// this project is L*Mt*Mr square, a few hundred rows).
class CMat {
  public:
    CMat() = default;
    CMat(int rows, int cols) : rows_(rows), cols_(cols), m_(static_cast<size_t>(rows) * cols) {}

    static CMat identity(int n);

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    cx &operator()(int r, int c) { return m_[static_cast<size_t>(r) * cols_ + c]; }
    const cx &operator()(int r, int c) const { return m_[static_cast<size_t>(r) * cols_ + c]; }

    cx *row(int r) { return m_.data() + static_cast<size_t>(r) * cols_; }
    const cx *row(int r) const { return m_.data() + static_cast<size_t>(r) * cols_; }

    cvec &data() { return m_; }
    const cvec &data() const { return m_; }

    CMat adjoint() const;

    bool operator==(const CMat &other) const = default;

  private:
    int rows_ = 0;
    int cols_ = 0;
    cvec m_;
};

CMat operator*(const CMat &a, const CMat &b);
CMat operator+(const CMat &a, const CMat &b);
CMat operator-(const CMat &a, const CMat &b);
cvec operator*(const CMat &a, const cvec &x);

cx trace(const CMat &a);
double frobenius_norm(const CMat &a);
bool is_hermitian(const CMat &a, double rel_tol);
bool all_finite(const CMat &a);
bool all_finite(const cvec &v);
double vec_norm(const cvec &v);
cx inner(const cvec &a, const cvec &b); // a^H b

} // namespace gbf
