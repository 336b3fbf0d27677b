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
#include "test_util.hpp"

#include <doctest.h>

#include <cmath>

using namespace gbf;
using gbf::test::random_cmat;
using gbf::test::random_hermitian;
using gbf::test::random_unit_vector;

namespace {

// Independent power-iteration oracle on the Gram matrix of h, built with
// plain loops so it shares nothing with the Jacobi path it checks.
struct PowerResult {
    cvec v;
    double sigma;
};

PowerResult power_iteration_oracle(const CMat &h, Rng &rng, int max_iters = 200000) {
    const int mt = h.cols();
    std::vector<cvec> gram(mt, cvec(mt, cx(0.0, 0.0)));
    for (int a = 0; a < mt; a++)
        for (int b = 0; b < mt; b++)
            for (int r = 0; r < h.rows(); r++)
                gram[a][b] += std::conj(h(r, a)) * h(r, b);

    cvec u = random_unit_vector(rng, mt);
    double lambda = 0.0;
    for (int it = 0; it < max_iters; it++) {
        cvec w(mt, cx(0.0, 0.0));
        for (int a = 0; a < mt; a++)
            for (int b = 0; b < mt; b++)
                w[a] += gram[a][b] * u[b];
        const double next = inner(u, w).real();
        const double nrm = vec_norm(w);
        if (nrm == 0.0)
            break;
        for (cx &z : w)
            z /= nrm;
        u = w;
        if (it > 8 && std::abs(next - lambda) <= 1e-15 * std::max(1.0, std::abs(next))) {
            lambda = next;
            break;
        }
        lambda = next;
    }
    return {u, std::sqrt(std::max(lambda, 0.0))};
}

} // namespace

TEST_SUITE("numerics") {

    TEST_CASE("hermitian_eig identity") {
        const EigResult e = hermitian_eig(CMat::identity(2));
        CHECK(e.eigenvalues[0] == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(e.eigenvalues[1] == doctest::Approx(1.0).epsilon(1e-12));
        const CMat vhv = e.eigenvectors.adjoint() * e.eigenvectors;
        CHECK(frobenius_norm(vhv - CMat::identity(2)) < 1e-10);
    }

    TEST_CASE("hermitian_eig diagonal") {
        CMat a(2, 2);
        a(0, 0) = 3.0;
        a(1, 1) = 1.0;
        const EigResult e = hermitian_eig(a);
        CHECK(e.eigenvalues[0] == doctest::Approx(3.0).epsilon(1e-12));
        CHECK(e.eigenvalues[1] == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(std::abs(e.eigenvectors(0, 0)) == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(std::abs(e.eigenvectors(1, 1)) == doctest::Approx(1.0).epsilon(1e-12));
    }

    TEST_CASE("hermitian_eig reconstruction oracle") {
        Rng rng(101);
        for (int trial = 0; trial < 20; trial++) {
            const int n = 4;
            const CMat a = random_hermitian(rng, n);
            const EigResult e = hermitian_eig(a);
            for (int k = 1; k < n; k++)
                CHECK(e.eigenvalues[k - 1] >= e.eigenvalues[k]);

            CMat lam(n, n);
            for (int k = 0; k < n; k++)
                lam(k, k) = e.eigenvalues[k];
            const CMat rebuilt = e.eigenvectors * lam * e.eigenvectors.adjoint();
            CHECK(frobenius_norm(rebuilt - a) <= 1e-9 * frobenius_norm(a));

            const CMat vhv = e.eigenvectors.adjoint() * e.eigenvectors;
            CHECK(frobenius_norm(vhv - CMat::identity(n)) < 1e-10);

            // Per-eigenpair residual A v = lambda v.
            for (int k = 0; k < n; k++) {
                cvec v(n);
                for (int r = 0; r < n; r++)
                    v[r] = e.eigenvectors(r, k);
                cvec av = a * v;
                for (int r = 0; r < n; r++)
                    av[r] -= e.eigenvalues[k] * v[r];
                CHECK(vec_norm(av) <= 1e-8 * frobenius_norm(a));
            }
        }
    }

    TEST_CASE("hermitian_eig eigenvalue sum equals trace") {
        Rng rng(202);
        for (int n = 1; n <= 8; n++) {
            const CMat a = random_hermitian(rng, n);
            const EigResult e = hermitian_eig(a);
            double sum = 0.0;
            for (double lambda : e.eigenvalues)
                sum += lambda;
            CHECK(sum == doctest::Approx(trace(a).real()).epsilon(1e-9));
        }
    }

    TEST_CASE("hermitian_eig rejects bad input") {
        CHECK_THROWS_AS(hermitian_eig(CMat(2, 3)), std::invalid_argument);
        CMat a(2, 2);
        a(0, 1) = cx(1.0, 0.0);
        a(1, 0) = cx(0.5, 0.0); // not Hermitian
        CHECK_THROWS_AS(hermitian_eig(a), std::invalid_argument);
    }

    TEST_CASE("dominant singular vector: aligned rank-1") {
        CMat h(2, 2);
        h(0, 0) = 1.0;
        const DominantSingular d = dominant_right_singular_vector(h);
        CHECK(d.sigma_max == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(std::abs(d.v[0] - cx(1.0, 0.0)) < 1e-10);
        CHECK(std::abs(d.v[1]) < 1e-10);
    }

    TEST_CASE("dominant singular vector: MISO closed form") {
        Rng rng(303);
        const CMat h = random_cmat(rng, 1, 4);
        const DominantSingular d = dominant_right_singular_vector(h);
        double nrm = 0.0;
        for (int s = 0; s < 4; s++)
            nrm += std::norm(h(0, s));
        nrm = std::sqrt(nrm);
        CHECK(d.sigma_max == doctest::Approx(nrm).epsilon(1e-10));
        // v must match H^H/||H|| up to the fixed phase convention.
        cvec expect(4);
        for (int s = 0; s < 4; s++)
            expect[s] = std::conj(h(0, s)) / nrm;
        CHECK(std::abs(inner(expect, d.v)) == doctest::Approx(1.0).epsilon(1e-10));
    }

    TEST_CASE("dominant singular vector: zero matrix convention") {
        const DominantSingular d = dominant_right_singular_vector(CMat(3, 2));
        CHECK(d.sigma_max == 0.0);
        CHECK(d.v[0] == cx(1.0, 0.0));
        CHECK(d.v[1] == cx(0.0, 0.0));
    }

    TEST_CASE("dominant singular vector: phase convention") {
        Rng rng(404);
        for (int trial = 0; trial < 10; trial++) {
            const CMat h = random_cmat(rng, 2, 4);
            const DominantSingular d = dominant_right_singular_vector(h);
            for (int s = 0; s < 4; s++) {
                if (std::abs(d.v[s]) > 1e-9) {
                    CHECK(d.v[s].imag() == doctest::Approx(0.0).epsilon(1e-12));
                    CHECK(d.v[s].real() >= 0.0);
                    break;
                }
            }
        }
    }

    TEST_CASE("dominant singular vector: power-iteration oracle") {
        Rng rng(505);
        for (int trial = 0; trial < 100; trial++) {
            const CMat h = random_cmat(rng, 2, 4);
            const DominantSingular d = dominant_right_singular_vector(h);

            cvec hv = h * d.v;
            CHECK(vec_norm(hv) == doctest::Approx(d.sigma_max).epsilon(1e-8));

            const PowerResult p = power_iteration_oracle(h, rng);
            CHECK(d.sigma_max == doctest::Approx(p.sigma).epsilon(1e-8));
            CHECK(std::abs(inner(p.v, d.v)) == doctest::Approx(1.0).epsilon(1e-8));
        }
    }

    TEST_CASE("dominant singular vector: maximality probe") {
        Rng rng(606);
        const CMat h = random_cmat(rng, 2, 4);
        const DominantSingular d = dominant_right_singular_vector(h);
        for (int trial = 0; trial < 1000; trial++) {
            const cvec u = random_unit_vector(rng, 4);
            CHECK(vec_norm(h * u) <= d.sigma_max + 1e-12);
        }
    }

    TEST_CASE("kron identity factor") {
        Rng rng(707);
        const CMat b = random_cmat(rng, 2, 3);
        const CMat k = kron(CMat::identity(2), b);
        REQUIRE(k.rows() == 4);
        REQUIRE(k.cols() == 6);
        for (int r = 0; r < 2; r++)
            for (int c = 0; c < 3; c++) {
                CHECK(k(r, c) == b(r, c));
                CHECK(k(2 + r, 3 + c) == b(r, c));
                CHECK(k(r, 3 + c) == cx(0.0, 0.0));
                CHECK(k(2 + r, c) == cx(0.0, 0.0));
            }
    }

    TEST_CASE("kron definition oracle") {
        Rng rng(808);
        const CMat a = random_cmat(rng, 2, 3);
        const CMat b = random_cmat(rng, 3, 2);
        const CMat k = kron(a, b);
        for (int ia = 0; ia < 2; ia++)
            for (int ja = 0; ja < 3; ja++)
                for (int ib = 0; ib < 3; ib++)
                    for (int jb = 0; jb < 2; jb++)
                        CHECK(k(ia * 3 + ib, ja * 2 + jb) == a(ia, ja) * b(ib, jb));
    }

    TEST_CASE("kron mixed-product identity") {
        Rng rng(909);
        const CMat a = random_cmat(rng, 2, 2);
        const CMat b = random_cmat(rng, 3, 3);
        cvec x(2), y(3);
        for (cx &z : x)
            z = rng.cgaussian();
        for (cx &z : y)
            z = rng.cgaussian();

        cvec xy(6);
        for (int i = 0; i < 2; i++)
            for (int j = 0; j < 3; j++)
                xy[i * 3 + j] = x[i] * y[j];

        const cvec lhs = kron(a, b) * xy;
        const cvec ax = a * x, by = b * y;
        for (int i = 0; i < 2; i++)
            for (int j = 0; j < 3; j++)
                CHECK(std::abs(lhs[i * 3 + j] - ax[i] * by[j]) < 1e-12);
    }

    TEST_CASE("kron associativity") {
        Rng rng(111);
        const CMat a = random_cmat(rng, 2, 2);
        const CMat b = random_cmat(rng, 2, 3);
        const CMat c = random_cmat(rng, 3, 2);
        const CMat lhs = kron(kron(a, b), c);
        const CMat rhs = kron(a, kron(b, c));
        CHECK(frobenius_norm(lhs - rhs) < 1e-12 * frobenius_norm(lhs));
    }

    TEST_CASE("kron entry cap") {
        CHECK_THROWS_AS(kron(CMat(5000, 5000), CMat(2, 2)), std::length_error);
    }

    TEST_CASE("psd_factor identity") {
        const CMat f = psd_factor(CMat::identity(3));
        const CMat ffh = f * f.adjoint();
        CHECK(frobenius_norm(ffh - CMat::identity(3)) < 1e-10);
    }

    TEST_CASE("psd_factor rank-deficient diagonal") {
        CMat r(2, 2);
        r(0, 0) = 4.0;
        const CMat f = psd_factor(r);
        const CMat ffh = f * f.adjoint();
        CHECK(frobenius_norm(ffh - r) < 1e-12);
        CHECK(std::abs(f(0, 1)) == 0.0);
        CHECK(std::abs(f(1, 1)) == 0.0);
    }

    TEST_CASE("psd_factor Gram-construction oracle") {
        Rng rng(222);
        for (int trial = 0; trial < 10; trial++) {
            const CMat g = random_cmat(rng, 6, 6);
            const CMat r = g * g.adjoint();
            const CMat f = psd_factor(r);
            CHECK(frobenius_norm(f * f.adjoint() - r) <= 1e-8 * frobenius_norm(r));
        }
    }

    TEST_CASE("psd_factor rejects indefinite input") {
        CMat r(2, 2);
        r(0, 0) = 1.0;
        r(1, 1) = -1.0;
        CHECK_THROWS_AS(psd_factor(r), std::invalid_argument);
    }
}
