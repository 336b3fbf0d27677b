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

#include <stdexcept>
#include <string>

namespace gbf {

// Invalid domain inputs use std::invalid_argument; resource caps use
// std::length_error. The types below cover the remaining failure classes
// so callers (and the C API) can map them to distinct codes.

class numeric_error : public std::runtime_error {
  public:
    explicit numeric_error(const std::string &msg) : std::runtime_error(msg) {}
};

class io_error : public std::runtime_error {
  public:
    explicit io_error(const std::string &msg) : std::runtime_error(msg) {}
};

class parse_error : public std::runtime_error {
  public:
    explicit parse_error(const std::string &msg) : std::runtime_error(msg) {}
};

class config_error : public std::runtime_error {
  public:
    explicit config_error(const std::string &msg) : std::runtime_error(msg) {}
};

} // namespace gbf
