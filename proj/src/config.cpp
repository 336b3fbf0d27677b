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

#include "config.hpp"

#include "errors.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <fstream>
#include <sstream>

namespace gbf {

namespace {

std::string trim(const std::string &s) {
    size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a])))
        a++;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1])))
        b--;
    return s.substr(a, b - a);
}

struct RawScenario {
    std::string name;
    std::map<std::string, std::string> kv;
    std::map<std::string, int> lines;
};

long long parse_int(const std::string &value, const std::string &where) {
    try {
        size_t used = 0;
        const long long v = std::stoll(value, &used);
        if (used != value.size())
            throw std::invalid_argument("trailing");
        return v;
    } catch (const std::exception &) {
        throw config_error(where + ": expected an integer, got '" + value + "'");
    }
}

double parse_real(const std::string &value, const std::string &where) {
    try {
        size_t used = 0;
        const double v = std::stod(value, &used);
        if (used != value.size())
            throw std::invalid_argument("trailing");
        return v;
    } catch (const std::exception &) {
        throw config_error(where + ": expected a number, got '" + value + "'");
    }
}

std::string join_path(const std::string &base, const std::string &path) {
    if (path.empty() || path.front() == '/' || base.empty())
        return path;
    return base + "/" + path;
}

const std::vector<std::string> kKnownKeys = {
    "subcarriers", "tx_antennas",    "rx_antennas",   "freq_model", "adjacent_corr",     "freq_matrix",
    "spatial",     "tx_matrix",      "rx_matrix",     "cluster_sizes", "prob_mode",       "symbols",
    "frozen_symbols", "trials",      "rebuild_every", "switching_symbols", "codebook",    "seed"};

ScenarioConfig build_scenario(const RawScenario &raw, const std::string &origin, const std::string &base_dir) {
    ScenarioConfig sc;
    sc.name = raw.name;

    auto where = [&](const std::string &key) {
        auto it = raw.lines.find(key);
        return origin + (it != raw.lines.end() ? ":" + std::to_string(it->second) : "") + ": " + key;
    };
    auto get = [&](const std::string &key) -> const std::string * {
        auto it = raw.kv.find(key);
        return it == raw.kv.end() ? nullptr : &it->second;
    };

    for (const auto &[key, value] : raw.kv) {
        if (std::find(kKnownKeys.begin(), kKnownKeys.end(), key) == kKnownKeys.end())
            throw config_error(where(key) + ": unknown key");
        (void)value;
    }

    if (const std::string *v = get("subcarriers"))
        sc.correlation.L = static_cast<int>(parse_int(*v, where("subcarriers")));
    if (const std::string *v = get("tx_antennas"))
        sc.correlation.Mt = static_cast<int>(parse_int(*v, where("tx_antennas")));
    if (const std::string *v = get("rx_antennas"))
        sc.correlation.Mr = static_cast<int>(parse_int(*v, where("rx_antennas")));
    if (sc.correlation.L < 1 || sc.correlation.Mt < 1 || sc.correlation.Mr < 1)
        throw config_error(origin + ": scenario '" + sc.name + "': dimensions must be >= 1");

    if (const std::string *v = get("freq_model")) {
        if (*v == "exponential")
            sc.correlation.freq_model = FreqModel::exponential_pdp;
        else if (*v == "explicit")
            sc.correlation.freq_model = FreqModel::explicit_matrix;
        else
            throw config_error(where("freq_model") + ": expected exponential or explicit");
    }
    if (const std::string *v = get("adjacent_corr")) {
        if (*v == "low")
            sc.correlation.adjacent_corr = kLowAdjacentCorr;
        else if (*v == "high")
            sc.correlation.adjacent_corr = kHighAdjacentCorr;
        else
            sc.correlation.adjacent_corr = parse_real(*v, where("adjacent_corr"));
        if (!(sc.correlation.adjacent_corr >= 0.0 && sc.correlation.adjacent_corr < 1.0))
            throw config_error(where("adjacent_corr") + ": must be in [0, 1)");
    }
    if (const std::string *v = get("freq_matrix")) {
        sc.correlation.freq_model = FreqModel::explicit_matrix;
        sc.correlation.freq_matrix = load_matrix_block(join_path(base_dir, *v));
    }
    if (sc.correlation.freq_model == FreqModel::explicit_matrix && !sc.correlation.freq_matrix)
        throw config_error(origin + ": scenario '" + sc.name + "': freq_model = explicit needs freq_matrix");

    if (const std::string *v = get("spatial")) {
        if (*v == "none") {
            sc.correlation.spatial_model = SpatialModel::none;
        } else if (*v == "macro") {
            if (sc.correlation.Mt != 4 || sc.correlation.Mr != 2)
                throw config_error(where("spatial") + ": the macro preset is defined for 4 TX / 2 RX antennas");
            sc.correlation.spatial_model = SpatialModel::explicit_matrices;
            sc.correlation.r_tx = spatial_correlation_macro_tx();
            sc.correlation.r_rx = spatial_correlation_macro_rx();
        } else if (*v == "explicit") {
            const std::string *tx = get("tx_matrix");
            const std::string *rx = get("rx_matrix");
            if (!tx || !rx)
                throw config_error(where("spatial") + ": explicit spatial needs tx_matrix and rx_matrix");
            sc.correlation.spatial_model = SpatialModel::explicit_matrices;
            sc.correlation.r_tx = load_matrix_block(join_path(base_dir, *tx));
            sc.correlation.r_rx = load_matrix_block(join_path(base_dir, *rx));
        } else {
            throw config_error(where("spatial") + ": expected none, macro or explicit");
        }
    }

    if (const std::string *v = get("cluster_sizes")) {
        sc.cluster_sizes.clear();
        std::string item;
        std::istringstream ss(*v);
        while (std::getline(ss, item, ',')) {
            item = trim(item);
            if (item.empty())
                continue;
            sc.cluster_sizes.push_back(static_cast<int>(parse_int(item, where("cluster_sizes"))));
        }
        if (sc.cluster_sizes.empty())
            throw config_error(where("cluster_sizes") + ": empty list");
    }
    for (int g : sc.cluster_sizes)
        if (g < 1 || sc.correlation.L % g != 0)
            throw config_error(origin + ": scenario '" + sc.name + "': cluster size " + std::to_string(g) +
                               " does not divide " + std::to_string(sc.correlation.L));

    if (const std::string *v = get("prob_mode")) {
        sc.modes.clear();
        if (*v == "pooled")
            sc.modes = {ProbMode::pooled};
        else if (*v == "per_index")
            sc.modes = {ProbMode::per_index};
        else if (*v == "both")
            sc.modes = {ProbMode::pooled, ProbMode::per_index};
        else
            throw config_error(where("prob_mode") + ": expected pooled, per_index or both");
    }

    if (const std::string *v = get("symbols"))
        sc.symbols = static_cast<int>(parse_int(*v, where("symbols")));
    if (const std::string *v = get("frozen_symbols"))
        sc.frozen_symbols = static_cast<int>(parse_int(*v, where("frozen_symbols")));
    if (const std::string *v = get("trials"))
        sc.trials = static_cast<int>(parse_int(*v, where("trials")));
    if (const std::string *v = get("rebuild_every"))
        sc.rebuild_every = static_cast<int>(parse_int(*v, where("rebuild_every")));
    if (const std::string *v = get("switching_symbols"))
        sc.switching_symbols = static_cast<int>(parse_int(*v, where("switching_symbols")));
    if (sc.symbols < 1 || sc.trials < 1 || sc.rebuild_every < 1 || sc.switching_symbols < 0)
        throw config_error(origin + ": scenario '" + sc.name + "': symbols/trials/rebuild_every must be >= 1");
    if (sc.frozen_symbols == 0 || sc.frozen_symbols < -1)
        throw config_error(origin + ": scenario '" + sc.name + "': frozen_symbols must be >= 1");

    if (const std::string *v = get("codebook")) {
        if (v->rfind("generate:", 0) == 0) {
            std::istringstream ss(v->substr(9));
            char c1 = 0, c2 = 0;
            long long mt = 0, n = 0, cseed = 0;
            if (!(ss >> mt >> c1 >> n >> c2 >> cseed) || c1 != ',' || c2 != ',' || !ss.eof())
                throw config_error(where("codebook") + ": expected generate:Mt,N,seed");
            sc.codebook.kind = CodebookSource::Kind::generate;
            sc.codebook.mt = static_cast<int>(mt);
            sc.codebook.n = static_cast<int>(n);
            sc.codebook.seed = static_cast<uint64_t>(cseed);
        } else {
            sc.codebook.kind = CodebookSource::Kind::file;
            sc.codebook.path = join_path(base_dir, *v);
        }
    }
    if (sc.codebook.kind == CodebookSource::Kind::generate) {
        if (sc.codebook.mt != sc.correlation.Mt)
            sc.codebook.mt = sc.correlation.Mt;
        if (sc.codebook.n < 2 || !std::has_single_bit(static_cast<unsigned>(sc.codebook.n)))
            throw config_error(origin + ": scenario '" + sc.name + "': codebook size must be a power of two");
    }
    return sc;
}

} // namespace

std::map<std::string, std::string> ScenarioConfig::resolved() const {
    std::map<std::string, std::string> kv;
    kv["subcarriers"] = std::to_string(correlation.L);
    kv["tx_antennas"] = std::to_string(correlation.Mt);
    kv["rx_antennas"] = std::to_string(correlation.Mr);
    kv["freq_model"] = correlation.freq_model == FreqModel::exponential_pdp ? "exponential" : "explicit";
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", correlation.adjacent_corr);
    kv["adjacent_corr"] = buf;
    kv["spatial"] = correlation.spatial_model == SpatialModel::none ? "none" : "explicit";
    std::string gs;
    for (size_t i = 0; i < cluster_sizes.size(); i++)
        gs += (i ? "," : "") + std::to_string(cluster_sizes[i]);
    kv["cluster_sizes"] = gs;
    std::string ms;
    for (size_t i = 0; i < modes.size(); i++)
        ms += std::string(i ? "," : "") + (modes[i] == ProbMode::pooled ? "pooled" : "per_index");
    kv["prob_mode"] = ms;
    kv["symbols"] = std::to_string(symbols);
    kv["frozen_symbols"] = std::to_string(frozen_symbols < 0 ? symbols : frozen_symbols);
    kv["trials"] = std::to_string(trials);
    kv["rebuild_every"] = std::to_string(rebuild_every);
    kv["switching_symbols"] = std::to_string(switching_symbols);
    if (codebook.kind == CodebookSource::Kind::generate)
        kv["codebook"] = "generate:" + std::to_string(codebook.mt) + "," + std::to_string(codebook.n) + "," +
                         std::to_string(codebook.seed);
    else
        kv["codebook"] = codebook.path;
    return kv;
}

ExperimentConfig parse_experiment_config(const std::string &text, const std::string &origin,
                                         const std::string &base_dir) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;

    RawScenario defaults;
    std::vector<RawScenario> raw;
    RawScenario *current = &defaults;

    while (std::getline(in, line)) {
        lineno++;
        const size_t hash = line.find('#');
        if (hash != std::string::npos)
            line.erase(hash);
        line = trim(line);
        if (line.empty())
            continue;

        if (line.front() == '[') {
            if (line.back() != ']')
                throw config_error(origin + ":" + std::to_string(lineno) + ": unterminated section header");
            std::istringstream hs(line.substr(1, line.size() - 2));
            std::string word, name;
            hs >> word >> name;
            std::string extra;
            if (word != "scenario" || name.empty() || (hs >> extra))
                throw config_error(origin + ":" + std::to_string(lineno) + ": expected [scenario <name>]");
            raw.push_back(defaults);
            raw.back().name = name;
            current = &raw.back();
            continue;
        }

        const size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw config_error(origin + ":" + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            throw config_error(origin + ":" + std::to_string(lineno) + ": expected key = value");
        current->kv[key] = value;
        current->lines[key] = lineno;
    }

    if (raw.empty())
        throw config_error(origin + ": no [scenario ...] sections");

    ExperimentConfig cfg;
    if (auto it = defaults.kv.find("seed"); it != defaults.kv.end())
        cfg.base_seed = static_cast<uint64_t>(parse_int(it->second, origin + ": seed"));
    for (RawScenario &rs : raw) {
        if (rs.kv.count("seed") && !defaults.kv.count("seed"))
            throw config_error(origin + ": seed is a global key; set it before the first section");
        rs.kv.erase("seed");
        cfg.scenarios.push_back(build_scenario(rs, origin, base_dir));
    }
    for (size_t i = 0; i < cfg.scenarios.size(); i++)
        for (size_t j = i + 1; j < cfg.scenarios.size(); j++)
            if (cfg.scenarios[i].name == cfg.scenarios[j].name)
                throw config_error(origin + ": duplicate scenario name '" + cfg.scenarios[i].name + "'");
    return cfg;
}

ExperimentConfig load_experiment_config(const std::string &path) {
    std::ifstream in(path);
    if (!in)
        throw io_error("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    std::string dir = ".";
    const size_t slash = path.find_last_of('/');
    if (slash != std::string::npos)
        dir = path.substr(0, slash);
    return parse_experiment_config(ss.str(), path, dir);
}

} // namespace gbf
