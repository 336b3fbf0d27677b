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

#include "bitio.hpp"

#include <cstdint>
#include <vector>

namespace gbf {

// Canonical Huffman code over symbols 0..n-1. The merge step breaks weight
// ties by the lowest contained symbol and codes are assigned in
// (length, symbol) order, so any two builders holding the same weights
// derive bit-identical codes. Weights must be strictly positive.
class HuffmanCode {
  public:
    HuffmanCode() = default;

    static HuffmanCode build(const std::vector<double> &weights);

    int size() const { return static_cast<int>(lengths_.size()); }
    int length(int symbol) const { return lengths_[symbol]; }
    uint64_t codeword(int symbol) const { return codes_[symbol]; }
    const std::vector<int> &lengths() const { return lengths_; }

    void encode(int symbol, BitWriter &out) const { out.put(codes_[symbol], lengths_[symbol]); }

    // Canonical decode, one bit at a time. Throws numeric_error on stream
    // exhaustion (framing error).
    int decode(BitReader &in) const;

    // Expected code length under a probability distribution.
    double mean_length(const std::vector<double> &probs) const;

    bool operator==(const HuffmanCode &other) const = default;

  private:
    std::vector<int> lengths_;
    std::vector<uint64_t> codes_;
    // Canonical decode tables, indexed by code length 1..max_len.
    std::vector<int> counts_;
    std::vector<uint64_t> first_code_;
    std::vector<int> first_offset_;
    std::vector<int> symbols_by_code_;

    void assign_canonical();
};

// Shannon entropy in bits of a distribution (entries may be zero).
double entropy_bits(const std::vector<double> &probs);

} // namespace gbf
