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

#include "feedback.hpp"

#include "errors.hpp"

#include <bit>
#include <stdexcept>

namespace gbf {

namespace {

void check_index(int value, int n, const char *what) {
    if (value < 0 || value >= n)
        throw std::invalid_argument(std::string(what) + " out of range");
}

int header_width(int n) {
    if (n < 2 || !std::has_single_bit(static_cast<unsigned>(n)))
        throw config_error("codebook size must be a power of two for the raw index header");
    return std::bit_width(static_cast<unsigned>(n)) - 1;
}

} // namespace

SymbolVector differential_encode_indices(const IndexVector &iv, const TransitionTable &tt) {
    if (iv.empty())
        throw std::invalid_argument("differential_encode_indices: empty index vector");
    const int n = tt.size();
    for (int i : iv)
        check_index(i, n, "codeword index");

    SymbolVector sv;
    sv.first_index = iv[0];
    sv.transitions.resize(iv.size() - 1);
    for (size_t m = 1; m < iv.size(); m++)
        sv.transitions[m - 1] = tt.symbol(iv[m - 1], iv[m]);
    return sv;
}

IndexVector differential_decode_indices(const SymbolVector &sv, const TransitionTable &tt) {
    const int n = tt.size();
    check_index(sv.first_index, n, "first cluster index");
    for (int k : sv.transitions)
        check_index(k, n, "transition symbol");

    IndexVector iv(sv.transitions.size() + 1);
    iv[0] = sv.first_index;
    for (size_t m = 0; m < sv.transitions.size(); m++)
        iv[m + 1] = tt.target(iv[m], sv.transitions[m]);
    return iv;
}

ProbabilityModel::ProbabilityModel(ProbMode mode, int n) : mode_(mode), n_(n) {
    if (n < 1)
        throw std::invalid_argument("ProbabilityModel: alphabet must be non-empty");
    if (mode == ProbMode::pooled) {
        counts_.assign(n, 0);
        totals_.assign(1, 0);
    } else {
        counts_.assign(static_cast<size_t>(n) * n, 0);
        totals_.assign(n, 0);
    }
}

size_t ProbabilityModel::row(int source_index) const {
    return mode_ == ProbMode::pooled ? 0 : static_cast<size_t>(source_index) * n_;
}

void ProbabilityModel::record(int source_index, int symbol) {
    check_index(symbol, n_, "transition symbol");
    check_index(source_index, n_, "source index");
    counts_[row(source_index) + symbol]++;
    totals_[mode_ == ProbMode::pooled ? 0 : source_index]++;
}

uint64_t ProbabilityModel::count(int source_index, int symbol) const {
    return counts_[row(source_index) + symbol];
}

uint64_t ProbabilityModel::total(int source_index) const {
    return totals_[mode_ == ProbMode::pooled ? 0 : source_index];
}

std::vector<double> ProbabilityModel::distribution(int source_index) const {
    const size_t base = row(source_index);
    const double denom = static_cast<double>(total(source_index)) + n_;
    std::vector<double> p(n_);
    for (int k = 0; k < n_; k++)
        p[k] = (static_cast<double>(counts_[base + k]) + 1.0) / denom;
    return p;
}

std::vector<double> ProbabilityModel::pooled_empirical() const {
    std::vector<double> p(n_, 0.0);
    uint64_t total = 0;
    if (mode_ == ProbMode::pooled) {
        for (int k = 0; k < n_; k++)
            total += counts_[k];
        for (int k = 0; k < n_; k++)
            p[k] = total ? static_cast<double>(counts_[k]) / static_cast<double>(total) : 0.0;
    } else {
        for (uint64_t t : totals_)
            total += t;
        for (int i = 0; i < n_; i++)
            for (int k = 0; k < n_; k++)
                p[k] += static_cast<double>(counts_[static_cast<size_t>(i) * n_ + k]);
        for (int k = 0; k < n_; k++)
            p[k] = total ? p[k] / static_cast<double>(total) : 0.0;
    }
    return p;
}

CodecSession::CodecSession(CodecRole role, ProbMode mode, std::shared_ptr<const TransitionTable> table,
                           int rebuild_every)
    : role_(role), mode_(mode), table_(std::move(table)), n_(table_ ? table_->size() : 0),
      header_bits_(header_width(n_)), rebuild_every_(rebuild_every), model_(mode, n_) {
    if (rebuild_every < 1)
        throw config_error("rebuild cadence must be >= 1");

    // Initial tables: uniform model (zero counts + smoothing).
    const int tables = mode_ == ProbMode::pooled ? 1 : n_;
    codes_.resize(tables);
    dirty_.assign(tables, 0);
    for (int i = 0; i < tables; i++)
        codes_[i] = HuffmanCode::build(model_.distribution(i));
}

const HuffmanCode &CodecSession::code_for(int source_index) const {
    return codes_[mode_ == ProbMode::pooled ? 0 : source_index];
}

FeedbackMessage CodecSession::encode(const SymbolVector &sv) {
    if (role_ != CodecRole::encoder)
        throw std::invalid_argument("CodecSession: decode-side session cannot encode");
    check_index(sv.first_index, n_, "first cluster index");

    BitWriter out;
    out.put(static_cast<uint64_t>(sv.first_index), header_bits_);
    int prev = sv.first_index;
    for (int k : sv.transitions) {
        check_index(k, n_, "transition symbol");
        code_for(prev).encode(k, out);
        prev = table_->target(prev, k);
    }

    FeedbackMessage msg;
    msg.bit_count = out.bit_count();
    msg.header_bits = header_bits_;
    msg.bytes = out.take_bytes();
    absorb(sv);
    return msg;
}

SymbolVector CodecSession::decode(const FeedbackMessage &msg) {
    if (role_ != CodecRole::decoder)
        throw std::invalid_argument("CodecSession: encode-side session cannot decode");

    BitReader in(msg.bytes.data(), msg.bit_count);
    SymbolVector sv;
    sv.first_index = static_cast<int>(in.get(header_bits_));
    int prev = sv.first_index;
    while (in.remaining() > 0) {
        const int k = code_for(prev).decode(in);
        sv.transitions.push_back(k);
        prev = table_->target(prev, k);
    }
    absorb(sv);
    return sv;
}

void CodecSession::absorb(const SymbolVector &sv) {
    int prev = sv.first_index;
    for (int k : sv.transitions) {
        model_.record(prev, k);
        dirty_[mode_ == ProbMode::pooled ? 0 : prev] = 1;
        prev = table_->target(prev, k);
    }
    messages_++;
    if (messages_ % rebuild_every_ == 0)
        rebuild_dirty();
}

void CodecSession::rebuild_dirty() {
    for (size_t i = 0; i < codes_.size(); i++) {
        if (!dirty_[i])
            continue;
        codes_[i] = HuffmanCode::build(model_.distribution(static_cast<int>(i)));
        dirty_[i] = 0;
    }
}

bool CodecSession::in_sync_with(const CodecSession &other) const {
    return mode_ == other.mode_ && n_ == other.n_ && messages_ == other.messages_ && model_ == other.model_ &&
           codes_ == other.codes_;
}

size_t CodecSession::max_message_bytes(int clusters) const {
    // Worst-case Huffman length is bounded by the alphabet size.
    const size_t bits = static_cast<size_t>(header_bits_) + static_cast<size_t>(clusters > 1 ? clusters - 1 : 0) * n_;
    return bits / 8 + 1;
}

FrozenCodec FrozenCodec::from_session(const CodecSession &session) {
    FrozenCodec fc;
    fc.table = session.table_ptr();
    // Re-derive the tables from the session's model so the codec is
    // self-contained.
    const int tables = session.mode() == ProbMode::pooled ? 1 : session.alphabet_size();
    fc.codes.resize(tables);
    for (int i = 0; i < tables; i++)
        fc.codes[i] = HuffmanCode::build(session.model().distribution(i));
    fc.mode = session.mode();
    fc.header_bits = session.header_bits();
    return fc;
}

FrozenCodec FrozenCodec::from_distributions(std::shared_ptr<const TransitionTable> table, ProbMode mode,
                                            const std::vector<std::vector<double>> &dists) {
    FrozenCodec fc;
    fc.table = std::move(table);
    fc.mode = mode;
    fc.header_bits = header_width(fc.table->size());
    const size_t expect = mode == ProbMode::pooled ? 1 : fc.table->size();
    if (dists.size() != expect)
        throw std::invalid_argument("FrozenCodec: distribution count mismatch");
    fc.codes.reserve(dists.size());
    for (const std::vector<double> &d : dists)
        fc.codes.push_back(HuffmanCode::build(d));
    return fc;
}

FeedbackMessage FrozenCodec::encode(const SymbolVector &sv) const {
    BitWriter out;
    out.put(static_cast<uint64_t>(sv.first_index), header_bits);
    int prev = sv.first_index;
    for (int k : sv.transitions) {
        codes[mode == ProbMode::pooled ? 0 : prev].encode(k, out);
        prev = table->target(prev, k);
    }
    FeedbackMessage msg;
    msg.bit_count = out.bit_count();
    msg.header_bits = header_bits;
    msg.bytes = out.take_bytes();
    return msg;
}

SymbolVector FrozenCodec::decode(const FeedbackMessage &msg) const {
    BitReader in(msg.bytes.data(), msg.bit_count);
    SymbolVector sv;
    sv.first_index = static_cast<int>(in.get(header_bits));
    int prev = sv.first_index;
    while (in.remaining() > 0) {
        const int k = codes[mode == ProbMode::pooled ? 0 : prev].decode(in);
        sv.transitions.push_back(k);
        prev = table->target(prev, k);
    }
    return sv;
}

} // namespace gbf
