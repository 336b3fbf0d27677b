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

#include "codebook.hpp"

#include "errors.hpp"
#include "rng.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <array>
#include <sstream>

namespace gbf {

namespace {

struct MatrixBlock {
    int cols = 0;
    int rows = 0;
    std::vector<cvec> lines;
};

MatrixBlock parse_matrix_block(const std::string &path) {
    std::ifstream in(path);
    if (!in)
        throw io_error("cannot open '" + path + "'");

    MatrixBlock block;
    std::string line;
    int lineno = 0;
    bool have_header = false;

    auto fail = [&](const std::string &msg) {
        throw parse_error(path + ":" + std::to_string(lineno) + ": " + msg);
    };

    while (std::getline(in, line)) {
        lineno++;
        const size_t hash = line.find('#');
        if (hash != std::string::npos)
            line.erase(hash);
        std::istringstream ss(line);
        if (!have_header) {
            int cols = 0, rows = 0;
            if (!(ss >> cols))
                continue; // blank or comment-only line before the header
            if (!(ss >> rows))
                fail("header must be '<cols> <rows>'");
            std::string extra;
            if (ss >> extra)
                fail("trailing tokens after header");
            if (cols < 1 || rows < 1)
                fail("header dimensions must be positive");
            block.cols = cols;
            block.rows = rows;
            have_header = true;
            continue;
        }
        cvec v;
        double re = 0.0, im = 0.0;
        while (ss >> re) {
            if (!(ss >> im))
                fail("odd number of reals; entries are re/im pairs");
            v.emplace_back(re, im);
        }
        if (v.empty())
            continue;
        if (static_cast<int>(v.size()) != block.cols)
            fail("expected " + std::to_string(2 * block.cols) + " reals, got " + std::to_string(2 * v.size()));
        if (!all_finite(v))
            fail("non-finite entry");
        if (static_cast<int>(block.lines.size()) == block.rows)
            fail("more data rows than the header declares");
        block.lines.push_back(std::move(v));
    }
    if (!have_header)
        throw parse_error(path + ": missing header line");
    if (static_cast<int>(block.lines.size()) != block.rows)
        throw parse_error(path + ": expected " + std::to_string(block.rows) + " data rows, got " +
                          std::to_string(block.lines.size()));
    return block;
}

void write_matrix_block(const std::string &path, int cols, int rows, const std::vector<cvec> &lines,
                        const std::string &comment) {
    std::ofstream out(path);
    if (!out)
        throw io_error("cannot open '" + path + "' for writing");
    if (!comment.empty())
        out << "# " << comment << "\n";
    out << cols << " " << rows << "\n";
    char buf[64];
    for (const cvec &v : lines) {
        for (size_t i = 0; i < v.size(); i++) {
            std::snprintf(buf, sizeof(buf), "%.17g %.17g", v[i].real(), v[i].imag());
            out << (i ? " " : "") << buf;
        }
        out << "\n";
    }
    if (!out)
        throw io_error("write to '" + path + "' failed");
}

double pair_distance(const cvec &a, const cvec &b) {
    const double ip = std::norm(inner(a, b));
    return std::sqrt(std::max(0.0, 1.0 - ip));
}

// One repulsion pass: soft-max weighted gradient step away from the most
// coherent pairs, then renormalize. Returns the max |inner|^2 before the step.
double repulsion_step(std::vector<cvec> &v, double sharpness, double step) {
    const int n = static_cast<int>(v.size());
    const int mt = static_cast<int>(v[0].size());

    std::vector<cx> g(static_cast<size_t>(n) * n); // g[k*n+l] = v_k^H v_l
    double mu = 0.0;
    for (int k = 0; k < n; k++) {
        for (int l = k + 1; l < n; l++) {
            const cx ip = inner(v[k], v[l]);
            g[static_cast<size_t>(k) * n + l] = ip;
            g[static_cast<size_t>(l) * n + k] = std::conj(ip);
            mu = std::max(mu, std::norm(ip));
        }
    }

    double wsum = 0.0;
    std::vector<double> w(static_cast<size_t>(n) * n, 0.0);
    for (int k = 0; k < n; k++) {
        for (int l = k + 1; l < n; l++) {
            const double a = std::norm(g[static_cast<size_t>(k) * n + l]);
            const double wk = std::exp(sharpness * (a - mu));
            w[static_cast<size_t>(k) * n + l] = wk;
            w[static_cast<size_t>(l) * n + k] = wk;
            wsum += wk;
        }
    }

    std::vector<cvec> next(n, cvec(mt));
    for (int k = 0; k < n; k++) {
        cvec d(mt, cx(0.0, 0.0));
        for (int l = 0; l < n; l++) {
            if (l == k)
                continue;
            // gradient of |v_k^H v_l|^2 w.r.t. conj(v_k) is (v_l^H v_k) v_l
            const cx coeff = w[static_cast<size_t>(k) * n + l] / wsum * std::conj(g[static_cast<size_t>(k) * n + l]);
            for (int t = 0; t < mt; t++)
                d[t] += coeff * v[l][t];
        }
        for (int t = 0; t < mt; t++)
            next[k][t] = v[k][t] - step * d[t];
        const double nrm = vec_norm(next[k]);
        if (nrm > 1e-12) {
            for (cx &z : next[k])
                z /= nrm;
        } else {
            next[k] = v[k];
        }
    }
    v = std::move(next);
    return mu;
}

double max_alpha(const std::vector<cvec> &v) {
    double mu = 0.0;
    for (size_t k = 0; k < v.size(); k++)
        for (size_t l = k + 1; l < v.size(); l++)
            mu = std::max(mu, std::norm(inner(v[k], v[l])));
    return mu;
}

// ---- diagonal-orbit construction -------------------------------------
//
// Codewords are diag(1, z^e1, z^e2, ...) applied to the flat base vector
// (1/sqrt(Mt)) * ones, with z the primitive 8th root of unity and the
// exponent tuples forming a subgroup of Z8^(Mt-1). Inner products then
// depend only on the group difference, so the codebook looks identical
// from every codeword.

constexpr int kOrbitCoordCap = 3; // exponent coordinates searched per generator

struct OrbitCandidate {
    std::vector<std::vector<int>> generators; // exponent tuples over Z8
    std::vector<int> orders;
    double max_ip2 = 2.0;
};

// |sum over coords of z^e|^2 / Mt^2 for a difference exponent tuple.
double orbit_ip2(const std::vector<int> &e, int mt) {
    static const double re8[8] = {1.0, 0.70710678118654752, 0.0, -0.70710678118654752,
                                  -1.0, -0.70710678118654752, 0.0, 0.70710678118654752};
    static const double im8[8] = {0.0, 0.70710678118654752, 1.0, 0.70710678118654752,
                                  0.0, -0.70710678118654752, -1.0, -0.70710678118654752};
    double re = 1.0, im = 0.0; // coordinate 0 is unrotated
    const int active = static_cast<int>(e.size());
    for (int t = 0; t < active; t++) {
        re += re8[e[t]];
        im += im8[e[t]];
    }
    re += static_cast<double>(mt - 1 - active); // coordinates beyond the cap
    return (re * re + im * im) / (static_cast<double>(mt) * mt);
}

// Worst pairwise |ip|^2 over all nonzero group differences, or 2 if the
// candidate does not generate a group of the requested size (duplicates).
double orbit_worst_ip2(const std::vector<std::vector<int>> &gens, const std::vector<int> &orders, int mt, int n) {
    const int coords = static_cast<int>(gens[0].size());
    std::vector<int> e(coords);
    double worst = 0.0;
    std::vector<int> digits(gens.size(), 0);
    int combos = 1;
    for (int o : orders)
        combos *= o;
    if (combos != n)
        return 2.0;
    for (int c = 1; c < combos; c++) {
        int rem = c;
        for (size_t g = 0; g < gens.size(); g++) {
            digits[g] = rem % orders[g];
            rem /= orders[g];
        }
        for (int t = 0; t < coords; t++) {
            int acc = 0;
            for (size_t g = 0; g < gens.size(); g++)
                acc += digits[g] * gens[g][t];
            e[t] = acc & 7;
        }
        bool zero = true;
        for (int t = 0; t < coords; t++)
            if (e[t] != 0)
                zero = false;
        if (zero)
            return 2.0; // duplicate codeword
        worst = std::max(worst, orbit_ip2(e, mt));
        if (worst >= 2.0)
            break;
    }
    return worst;
}

// Exhaustive exponent search over one- and two-generator subgroups.
// Returns an empty candidate when N has no suitable factorization.
OrbitCandidate search_orbit(int mt, int n) {
    OrbitCandidate best;
    const int coords = std::min(mt - 1, kOrbitCoordCap);
    const int space = 1 << (3 * coords); // Z8^coords

    auto tuple_of = [&](int packed) {
        std::vector<int> e(coords);
        for (int t = 0; t < coords; t++)
            e[t] = (packed >> (3 * t)) & 7;
        return e;
    };
    auto element_order = [&](const std::vector<int> &e) {
        int g = 8;
        for (int v : e)
            g = std::gcd(g, v);
        return 8 / g;
    };

    for (int f1 : {2, 4, 8}) {
        if (n == f1) {
            for (int p1 = 1; p1 < space; p1++) {
                const std::vector<int> g1 = tuple_of(p1);
                if (element_order(g1) != f1)
                    continue;
                const double worst = orbit_worst_ip2({g1}, {f1}, mt, n);
                if (worst < best.max_ip2) {
                    best.max_ip2 = worst;
                    best.generators = {g1};
                    best.orders = {f1};
                }
            }
        }
        for (int f2 : {2, 4, 8}) {
            if (f1 * f2 != n || f2 > f1)
                continue;
            for (int p1 = 1; p1 < space; p1++) {
                const std::vector<int> g1 = tuple_of(p1);
                if (element_order(g1) != f1)
                    continue;
                for (int p2 = p1 + 1; p2 < space; p2++) {
                    const std::vector<int> g2 = tuple_of(p2);
                    if (element_order(g2) != f2)
                        continue;
                    const double worst = orbit_worst_ip2({g1, g2}, {f1, f2}, mt, n);
                    if (worst < best.max_ip2) {
                        best.max_ip2 = worst;
                        best.generators = {g1, g2};
                        best.orders = {f1, f2};
                    }
                }
            }
        }
    }
    return best;
}

std::vector<cvec> orbit_vectors(const OrbitCandidate &cand, int mt, int n) {
    const cx z8[8] = {{1.0, 0.0},
                      {0.70710678118654752, 0.70710678118654752},
                      {0.0, 1.0},
                      {-0.70710678118654752, 0.70710678118654752},
                      {-1.0, 0.0},
                      {-0.70710678118654752, -0.70710678118654752},
                      {0.0, -1.0},
                      {0.70710678118654752, -0.70710678118654752}};
    const double amp = 1.0 / std::sqrt(static_cast<double>(mt));
    const int coords = static_cast<int>(cand.generators[0].size());

    std::vector<cvec> v(n, cvec(mt, cx(amp, 0.0)));
    for (int i = 0; i < n; i++) {
        int rem = i;
        std::vector<int> digits(cand.generators.size());
        for (size_t g = 0; g < cand.generators.size(); g++) {
            digits[g] = rem % cand.orders[g];
            rem /= cand.orders[g];
        }
        for (int t = 0; t < coords; t++) {
            int acc = 0;
            for (size_t g = 0; g < cand.generators.size(); g++)
                acc += digits[g] * cand.generators[g][t];
            v[i][t + 1] = amp * z8[acc & 7];
        }
    }
    return v;
}

} // namespace

double min_distance(const Codebook &cb) {
    double j = 1.0;
    for (int k = 0; k < cb.n; k++)
        for (int l = k + 1; l < cb.n; l++)
            j = std::min(j, pair_distance(cb.vectors[k], cb.vectors[l]));
    return j;
}

Codebook load_codebook(const std::string &path) {
    MatrixBlock block = parse_matrix_block(path);
    if (block.cols < 1 || block.rows < 2)
        throw parse_error(path + ": a codebook needs at least 2 codewords");

    Codebook cb;
    cb.mt = block.cols;
    cb.n = block.rows;
    cb.vectors = std::move(block.lines);
    cb.source = path;

    for (int i = 0; i < cb.n; i++) {
        const double nrm = vec_norm(cb.vectors[i]);
        if (std::abs(nrm - 1.0) > 1e-6)
            throw parse_error(path + ": codeword " + std::to_string(i) + " has norm " + std::to_string(nrm) +
                              ", more than 1e-6 from unit");
        for (cx &z : cb.vectors[i])
            z /= nrm;
    }

    cb.min_distance = min_distance(cb);
    if (!(cb.min_distance > 0.0))
        throw parse_error(path + ": codebook contains duplicate codewords");
    return cb;
}

void save_codebook(const Codebook &cb, const std::string &path) {
    write_matrix_block(path, cb.mt, cb.n, cb.vectors,
                       "beamforming codebook, J = " + std::to_string(cb.min_distance) + ", " + cb.source);
}

CMat load_matrix_block(const std::string &path) {
    MatrixBlock block = parse_matrix_block(path);
    CMat m(block.rows, block.cols);
    for (int r = 0; r < block.rows; r++)
        for (int c = 0; c < block.cols; c++)
            m(r, c) = block.lines[r][c];
    return m;
}

void save_matrix_block(const CMat &m, const std::string &path) {
    std::vector<cvec> lines(m.rows(), cvec(m.cols()));
    for (int r = 0; r < m.rows(); r++)
        for (int c = 0; c < m.cols(); c++)
            lines[r][c] = m(r, c);
    write_matrix_block(path, m.cols(), m.rows(), lines, "");
}

Codebook generate_glp_codebook(int mt, int n, uint64_t seed, int restarts, int iterations, CodebookStyle style) {
    if (mt < 2 || n < 2)
        throw std::invalid_argument("generate_glp_codebook: need Mt >= 2 and N >= 2");
    if (restarts < 1 || iterations < 1)
        throw std::invalid_argument("generate_glp_codebook: restarts and iterations must be >= 1");

    if (style != CodebookStyle::packing) {
        const OrbitCandidate cand = search_orbit(mt, n);
        if (cand.max_ip2 <= 1.0) {
            Codebook cb;
            cb.mt = mt;
            cb.n = n;
            cb.vectors = orbit_vectors(cand, mt, n);
            cb.min_distance = min_distance(cb);
            cb.source = "generated(orbit,Mt=" + std::to_string(mt) + ",N=" + std::to_string(n) + ")";
            return cb;
        }
        if (style == CodebookStyle::orbit)
            throw std::invalid_argument("generate_glp_codebook: no orbit construction for this (Mt, N)");
    }

    std::vector<cvec> best;
    double best_mu = 2.0;

    for (int rs = 0; rs < restarts; rs++) {
        Rng rng = Rng::stream(seed, static_cast<uint64_t>(rs));
        std::vector<cvec> v(n, cvec(mt));
        for (cvec &vk : v) {
            for (cx &z : vk)
                z = rng.cgaussian();
            const double nrm = vec_norm(vk);
            for (cx &z : vk)
                z /= nrm;
        }

        double sharpness = 32.0;
        const double step = 0.35;
        for (int it = 0; it < iterations; it++) {
            const double mu = repulsion_step(v, sharpness, step);
            if (mu < best_mu) {
                best_mu = mu;
                best = v; // state *before* the step achieved mu
            }
            sharpness = std::min(sharpness * 1.03, 5e4);
        }
        const double mu = max_alpha(v);
        if (mu < best_mu) {
            best_mu = mu;
            best = v;
        }
    }

    Codebook cb;
    cb.mt = mt;
    cb.n = n;
    cb.vectors = std::move(best);
    cb.min_distance = min_distance(cb);
    cb.source = "generated(seed=" + std::to_string(seed) + ",restarts=" + std::to_string(restarts) +
                ",iterations=" + std::to_string(iterations) + ")";
    return cb;
}

TransitionTable::TransitionTable(int n, std::vector<int> order, std::vector<int> rank, std::vector<double> betas)
    : n_(n), order_(std::move(order)), rank_(std::move(rank)), betas_(std::move(betas)) {}

TransitionTable build_transition_table(const Codebook &cb) {
    const int n = cb.n;
    std::vector<int> order(static_cast<size_t>(n) * n);
    std::vector<int> rank(static_cast<size_t>(n) * n);
    std::vector<double> betas(static_cast<size_t>(n) * n);

    std::vector<double> alpha(n);
    std::vector<int> idx(n);
    for (int i = 0; i < n; i++) {
        for (int l = 0; l < n; l++)
            alpha[l] = std::norm(inner(cb.vectors[i], cb.vectors[l]));
        std::iota(idx.begin(), idx.end(), 0);
        std::sort(idx.begin(), idx.end(), [&](int a, int b) {
            if (alpha[a] != alpha[b])
                return alpha[a] > alpha[b];
            return a < b;
        });
        for (int k = 0; k < n; k++) {
            const int l = idx[k];
            order[static_cast<size_t>(i) * n + k] = l;
            rank[static_cast<size_t>(i) * n + l] = k;
            betas[static_cast<size_t>(i) * n + k] = alpha[l];
        }
    }
    return TransitionTable(n, std::move(order), std::move(rank), std::move(betas));
}

double check_property1(const TransitionTable &tt) {
    const int n = tt.size();
    double dev = 0.0;
    for (int k = 0; k < n; k++) {
        double lo = tt.beta(0, k), hi = tt.beta(0, k);
        for (int i = 1; i < n; i++) {
            lo = std::min(lo, tt.beta(i, k));
            hi = std::max(hi, tt.beta(i, k));
        }
        dev = std::max(dev, hi - lo);
    }
    return dev;
}

} // namespace gbf
