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

#include "beamform.hpp"
#include "codebook.hpp"
#include "huffman.hpp"

#include <cstdint>
#include <memory>
#include <vector>

namespace gbf {

// One OFDM symbol's feedback content before entropy coding: the first
// cluster's raw codeword index and one transition symbol (rank in the
// source codeword's ordering, 0 = same codeword) per remaining cluster.
struct SymbolVector {
    int first_index = 0;
    std::vector<int> transitions;

    bool operator==(const SymbolVector &other) const = default;
};

// Rank-based differential mapping between index vectors and symbol vectors.
SymbolVector differential_encode_indices(const IndexVector &iv, const TransitionTable &tt);
IndexVector differential_decode_indices(const SymbolVector &sv, const TransitionTable &tt);

enum class ProbMode { pooled, per_index };

// Transition-symbol statistics with add-one smoothing, either one shared
// distribution or one per source codeword index. Counts only grow; the
// smoothed probabilities are (count + 1) / (total + N), so every symbol
// stays encodable from the first message on.
class ProbabilityModel {
  public:
    ProbabilityModel() = default;
    ProbabilityModel(ProbMode mode, int n);

    ProbMode mode() const { return mode_; }
    int alphabet_size() const { return n_; }

    void record(int source_index, int symbol);

    uint64_t count(int source_index, int symbol) const;
    uint64_t total(int source_index) const;

    // Smoothed distribution used for code construction.
    std::vector<double> distribution(int source_index) const;

    // Raw empirical ratio count/total, pooled over sources (the convergence
    // diagnostic; zero counts give zero probability).
    std::vector<double> pooled_empirical() const;

    bool operator==(const ProbabilityModel &other) const = default;

  private:
    ProbMode mode_ = ProbMode::pooled;
    int n_ = 0;
    std::vector<uint64_t> counts_; // pooled: n entries; per_index: n*n, row = source
    std::vector<uint64_t> totals_; // pooled: 1 entry; per_index: n

    size_t row(int source_index) const;
};

// One OFDM symbol's encoded feedback. Wire layout: log2(N) raw header bits
// (the first cluster's index, big-endian), then the Huffman codewords of
// the transition symbols in cluster order, packed MSB-first and zero-padded
// to a byte boundary only at the end. bit_count is the unpadded length.
struct FeedbackMessage {
    std::vector<uint8_t> bytes;
    size_t bit_count = 0;
    int header_bits = 0;

    size_t payload_bits() const { return bit_count - header_bits; }

    bool operator==(const FeedbackMessage &other) const = default;
};

enum class CodecRole { encoder, decoder };

// Adaptive codec endpoint. Encoder and decoder instances fed the same
// message sequence stay in lock step: message t is coded with tables built
// from messages 1..t-1, then both sides apply the same count update and
// (every rebuild_every messages) the same table rebuild. N must be a power
// of two so the raw header width is integral.
class CodecSession {
  public:
    CodecSession(CodecRole role, ProbMode mode, std::shared_ptr<const TransitionTable> table,
                 int rebuild_every = 1);

    CodecRole role() const { return role_; }
    ProbMode mode() const { return mode_; }
    int alphabet_size() const { return n_; }
    int header_bits() const { return header_bits_; }
    uint64_t messages_processed() const { return messages_; }
    const ProbabilityModel &model() const { return model_; }
    const TransitionTable &table() const { return *table_; }
    std::shared_ptr<const TransitionTable> table_ptr() const { return table_; }

    FeedbackMessage encode(const SymbolVector &sv);
    SymbolVector decode(const FeedbackMessage &msg);

    // Code table for a source index under the current model state.
    const HuffmanCode &code_for(int source_index) const;

    // Tables and state equality (the synchronization contract).
    bool in_sync_with(const CodecSession &other) const;

    // Upper bound on an encoded message size for M clusters, in bytes.
    size_t max_message_bytes(int clusters) const;

  private:
    CodecRole role_;
    ProbMode mode_;
    std::shared_ptr<const TransitionTable> table_;
    int n_;
    int header_bits_;
    int rebuild_every_;
    uint64_t messages_ = 0;
    ProbabilityModel model_;
    std::vector<HuffmanCode> codes_;  // pooled: 1; per_index: n
    std::vector<uint8_t> dirty_;      // distributions touched since last rebuild

    void absorb(const SymbolVector &sv);
    void rebuild_dirty();
};

// Stateless coding against a frozen code table set (the known-probabilities
// regime): no count updates, shared tables on both sides.
struct FrozenCodec {
    std::shared_ptr<const TransitionTable> table;
    std::vector<HuffmanCode> codes; // pooled: 1; per_index: n
    ProbMode mode = ProbMode::pooled;
    int header_bits = 0;

    static FrozenCodec from_session(const CodecSession &session);
    static FrozenCodec from_distributions(std::shared_ptr<const TransitionTable> table, ProbMode mode,
                                          const std::vector<std::vector<double>> &dists);

    FeedbackMessage encode(const SymbolVector &sv) const;
    SymbolVector decode(const FeedbackMessage &msg) const;
};

} // namespace gbf
