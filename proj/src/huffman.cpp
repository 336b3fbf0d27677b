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

#include "huffman.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>
#include <stdexcept>

namespace gbf {

namespace {

struct Node {
    double weight;
    int min_symbol; // lowest source symbol in the subtree; deterministic tie order
    int left = -1;  // node indexes, -1 for leaves
    int right = -1;
    int symbol = -1;
};

struct NodeOrder {
    const std::vector<Node> *nodes;
    bool operator()(int a, int b) const {
        const Node &na = (*nodes)[a], &nb = (*nodes)[b];
        if (na.weight != nb.weight)
            return na.weight > nb.weight; // min-heap
        return na.min_symbol > nb.min_symbol;
    }
};

} // namespace

HuffmanCode HuffmanCode::build(const std::vector<double> &weights) {
    const int n = static_cast<int>(weights.size());
    if (n < 1)
        throw std::invalid_argument("HuffmanCode: empty alphabet");
    for (double w : weights)
        if (!(w > 0.0) || !std::isfinite(w))
            throw std::invalid_argument("HuffmanCode: weights must be positive and finite");

    HuffmanCode code;
    code.lengths_.assign(n, 0);
    code.codes_.assign(n, 0);

    if (n == 1) {
        // Degenerate alphabet: one symbol, one bit.
        code.lengths_[0] = 1;
        code.assign_canonical();
        return code;
    }

    std::vector<Node> nodes;
    nodes.reserve(2 * n);
    NodeOrder order{&nodes};
    std::priority_queue<int, std::vector<int>, NodeOrder> heap(order);
    for (int s = 0; s < n; s++) {
        nodes.push_back({weights[s], s, -1, -1, s});
        heap.push(s);
    }
    while (heap.size() > 1) {
        const int a = heap.top();
        heap.pop();
        const int b = heap.top();
        heap.pop();
        nodes.push_back({nodes[a].weight + nodes[b].weight, std::min(nodes[a].min_symbol, nodes[b].min_symbol), a, b, -1});
        heap.push(static_cast<int>(nodes.size()) - 1);
    }

    // Depths via an explicit stack rooted at the final merge.
    std::vector<std::pair<int, int>> stack{{heap.top(), 0}};
    while (!stack.empty()) {
        auto [id, depth] = stack.back();
        stack.pop_back();
        const Node &node = nodes[id];
        if (node.symbol >= 0) {
            if (depth > 64)
                throw numeric_error("HuffmanCode: code length exceeds 64 bits");
            code.lengths_[node.symbol] = depth;
        } else {
            stack.push_back({node.left, depth + 1});
            stack.push_back({node.right, depth + 1});
        }
    }

    code.assign_canonical();
    return code;
}

void HuffmanCode::assign_canonical() {
    const int n = size();
    std::vector<int> syms(n);
    std::iota(syms.begin(), syms.end(), 0);
    std::sort(syms.begin(), syms.end(), [&](int a, int b) {
        if (lengths_[a] != lengths_[b])
            return lengths_[a] < lengths_[b];
        return a < b;
    });

    const int max_len = lengths_[syms.back()];
    counts_.assign(max_len + 1, 0);
    first_code_.assign(max_len + 1, 0);
    first_offset_.assign(max_len + 1, 0);
    symbols_by_code_ = syms;
    for (int i = 0; i < n; i++) {
        const int len = lengths_[syms[i]];
        if (counts_[len]++ == 0)
            first_offset_[len] = i;
    }

    uint64_t next = 0;
    int prev_len = 0;
    for (int i = 0; i < n; i++) {
        const int s = syms[i];
        const int len = lengths_[s];
        if (len > prev_len) {
            next <<= (len - prev_len);
            first_code_[len] = next;
            prev_len = len;
        }
        codes_[s] = next++;
    }
}

int HuffmanCode::decode(BitReader &in) const {
    uint64_t acc = 0;
    const int max_len = static_cast<int>(counts_.size()) - 1;
    for (int len = 1; len <= max_len; len++) {
        acc = (acc << 1) | in.get_bit();
        const int cnt = counts_[len];
        if (cnt > 0 && acc >= first_code_[len] && acc - first_code_[len] < static_cast<uint64_t>(cnt))
            return symbols_by_code_[first_offset_[len] + static_cast<int>(acc - first_code_[len])];
    }
    throw numeric_error("HuffmanCode: invalid codeword in stream");
}

double HuffmanCode::mean_length(const std::vector<double> &probs) const {
    if (static_cast<int>(probs.size()) != size())
        throw std::invalid_argument("HuffmanCode: distribution size mismatch");
    double mean = 0.0;
    for (int s = 0; s < size(); s++)
        mean += probs[s] * lengths_[s];
    return mean;
}

double entropy_bits(const std::vector<double> &probs) {
    double h = 0.0;
    for (double p : probs)
        if (p > 0.0)
            h -= p * std::log2(p);
    return h;
}

} // namespace gbf
