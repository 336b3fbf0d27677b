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

#include "errors.hpp"

#include <cstddef>
#include <cstdint>
#include <vector>

namespace gbf {

// MSB-first bit packing. Bytes are zero-padded at the tail only; the owner
// tracks the exact bit count.
class BitWriter {
  public:
    // value's low `width` bits, most significant first.
    void put(uint64_t value, int width) {
        for (int b = width - 1; b >= 0; b--)
            put_bit((value >> b) & 1u);
    }

    void put_bit(unsigned bit) {
        const size_t byte = count_ / 8;
        if (byte == bytes_.size())
            bytes_.push_back(0);
        if (bit)
            bytes_[byte] |= static_cast<uint8_t>(0x80u >> (count_ % 8));
        count_++;
    }

    size_t bit_count() const { return count_; }
    const std::vector<uint8_t> &bytes() const { return bytes_; }
    std::vector<uint8_t> take_bytes() { return std::move(bytes_); }

  private:
    std::vector<uint8_t> bytes_;
    size_t count_ = 0;
};

class BitReader {
  public:
    BitReader(const uint8_t *bytes, size_t bit_count) : bytes_(bytes), count_(bit_count) {}

    unsigned get_bit() {
        if (pos_ >= count_)
            throw numeric_error("bitstream exhausted mid-codeword");
        const unsigned bit = (bytes_[pos_ / 8] >> (7 - pos_ % 8)) & 1u;
        pos_++;
        return bit;
    }

    uint64_t get(int width) {
        uint64_t v = 0;
        for (int b = 0; b < width; b++)
            v = (v << 1) | get_bit();
        return v;
    }

    size_t position() const { return pos_; }
    size_t remaining() const { return count_ - pos_; }

  private:
    const uint8_t *bytes_;
    size_t count_;
    size_t pos_ = 0;
};

} // namespace gbf
