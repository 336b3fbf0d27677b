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

#include <cstdint>
#include <string>
#include <vector>

namespace gbf {

// A beamforming codebook: N unit-norm vectors in C^Mt. Indexes are 0-based
// throughout the library. min_distance is the packing objective
// J = min over pairs of sqrt(1 - |v_k^H v_l|^2).
struct Codebook {
    int mt = 0;
    int n = 0;
    std::vector<cvec> vectors;
    double min_distance = 0.0;
    std::string source; // file path or "generated(seed=..,restarts=..,iterations=..)"
};

// Exact pairwise minimum of sqrt(1 - |v_k^H v_l|^2).
double min_distance(const Codebook &cb);

// Codebook / matrix-block text format: optional '#' comment lines, a header
// "<cols> <rows>", then <rows> lines of 2*<cols> reals (re im interleaved).
// For codebooks the header is "Mt N" and each line is one codeword.
// Vectors within 1e-6 of unit norm are renormalized; anything farther is a
// parse error, as are duplicate codewords.
Codebook load_codebook(const std::string &path);
void save_codebook(const Codebook &cb, const std::string &path);

// Generic matrix block in the same format (used for explicit correlation
// matrices). The header is "<cols> <rows>".
CMat load_matrix_block(const std::string &path);
void save_matrix_block(const CMat &m, const std::string &path);

// Construction families for generated codebooks.
//
// `packing`: best-of-restarts repulsion dynamics on the unit sphere
// (annealed soft-max of the pairwise |inner product|^2). Maximizes J but
// leaves the codeword selection cells uneven.
//
// `orbit`: the orbit of one base vector under a group of diagonal 8th-root
// phase unitaries, exponents chosen by exhaustive search for max-min
// distance. All cells are congruent, so selection frequencies on white
// channels are exactly uniform and every codeword shares one transition
// spectrum; J is slightly below the unstructured optimum. Available when N
// factors into at most two factors from {2,4,8} (and Mt is large enough).
//
// `balanced_auto` (default): orbit when available, packing otherwise.
enum class CodebookStyle { balanced_auto, packing, orbit };

// Deterministic for a fixed seed; the returned codebook is the best J seen
// across restarts and iterations (the orbit family is seed-independent).
Codebook generate_glp_codebook(int mt, int n, uint64_t seed, int restarts = 10, int iterations = 2000,
                               CodebookStyle style = CodebookStyle::balanced_auto);

// Per-source-index transition structure: ranks all target codewords by
// descending |v_i^H v_l|^2, ties broken by ascending target index so that
// two sides building the table from the same codebook always agree.
class TransitionTable {
  public:
    TransitionTable() = default;
    TransitionTable(int n, std::vector<int> order, std::vector<int> rank, std::vector<double> betas);

    int size() const { return n_; }

    // q_i(k): target codeword index at rank k for source i. rank 0 is i itself.
    int target(int source, int rank) const { return order_[static_cast<size_t>(source) * n_ + rank]; }

    // xi_i(j): the rank (transition symbol) of target j for source i.
    int symbol(int source, int target) const { return rank_[static_cast<size_t>(source) * n_ + target]; }

    // beta_i(k): the sorted |inner product|^2 value at rank k.
    double beta(int source, int rank) const { return betas_[static_cast<size_t>(source) * n_ + rank]; }

  private:
    int n_ = 0;
    std::vector<int> order_;
    std::vector<int> rank_;
    std::vector<double> betas_;
};

TransitionTable build_transition_table(const Codebook &cb);

// Max over (i, j, k) of |beta_i(k) - beta_j(k)|: how far the codebook is
// from having a common transition spectrum. Measured diagnostic only.
double check_property1(const TransitionTable &tt);

} // namespace gbf
