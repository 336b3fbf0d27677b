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

#include "errors.hpp"
#include "harness.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

namespace gbf {

namespace {

using nlohmann::json;

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

const char *mode_name(ProbMode mode) { return mode == ProbMode::pooled ? "pooled" : "per_index"; }

std::ofstream open_out(const std::string &path) {
    std::ofstream out(path);
    if (!out)
        throw io_error("cannot open '" + path + "' for writing");
    return out;
}

void write_table_csv(const std::string &path, const ScenarioReport &sr, ProbMode mode) {
    std::ofstream out = open_out(path);
    out << "G,baseline_bits,huffman_bits_frozen,huffman_bits_adaptive,entropy\n";
    for (const RunMetrics &rm : sr.runs) {
        if (rm.mode != mode)
            continue;
        out << rm.G << "," << fmt_double(rm.baseline_bits) << "," << fmt_double(rm.frozen_mean_bits) << ","
            << fmt_double(rm.adaptive_mean_bits) << "," << fmt_double(rm.entropy_bits_per_symbol) << "\n";
    }
    if (!out)
        throw io_error("write to '" + path + "' failed");
}

void write_convergence_csv(const std::string &path, const ExperimentReport &report) {
    std::ofstream out = open_out(path);
    size_t t_max = 0;
    out << "t";
    for (const ScenarioReport &sr : report.scenarios) {
        for (const RunMetrics &rm : sr.runs) {
            out << "," << sr.name << ".G" << rm.G << "." << mode_name(rm.mode);
            t_max = std::max(t_max, rm.convergence.size());
        }
    }
    out << "\n";
    for (size_t t = 0; t < t_max; t++) {
        out << (t + 1);
        for (const ScenarioReport &sr : report.scenarios)
            for (const RunMetrics &rm : sr.runs) {
                out << ",";
                if (t < rm.convergence.size())
                    out << fmt_double(rm.convergence[t]);
            }
        out << "\n";
    }
    if (!out)
        throw io_error("write to '" + path + "' failed");
}

// Minimal line plot; one polyline per run plus the G=1 baseline rule.
void write_convergence_svg(const std::string &path, const ScenarioReport &sr) {
    const int width = 760, height = 420;
    const int ml = 64, mr = 16, mt = 28, mb = 44;
    const double px = ml, py = mt, pw = width - ml - mr, ph = height - mt - mb;

    size_t t_max = 1;
    double y_max = 1.0;
    for (const RunMetrics &rm : sr.runs) {
        t_max = std::max(t_max, rm.convergence.size());
        y_max = std::max(y_max, rm.baseline_bits);
        for (double v : rm.convergence)
            y_max = std::max(y_max, v);
    }
    y_max *= 1.05;

    auto sx = [&](double t) { return px + (t - 1.0) / std::max<double>(1.0, static_cast<double>(t_max) - 1.0) * pw; };
    auto sy = [&](double v) { return py + ph - v / y_max * ph; };

    static const char *palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
                                    "#8c564b", "#e377c2", "#17becf", "#bcbd22", "#7f7f7f"};

    std::ofstream out = open_out(path);
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<text x=\"" << width / 2 << "\" y=\"18\" text-anchor=\"middle\" font-size=\"14\">" << sr.name
        << ": feedback bits per OFDM symbol</text>\n";
    out << "<rect x=\"" << px << "\" y=\"" << py << "\" width=\"" << pw << "\" height=\"" << ph
        << "\" fill=\"none\" stroke=\"black\"/>\n";
    for (int tick = 0; tick <= 4; tick++) {
        const double v = y_max * tick / 4.0;
        out << "<line x1=\"" << px - 4 << "\" y1=\"" << sy(v) << "\" x2=\"" << px << "\" y2=\"" << sy(v)
            << "\" stroke=\"black\"/>\n";
        out << "<text x=\"" << px - 8 << "\" y=\"" << sy(v) + 4 << "\" text-anchor=\"end\" font-size=\"11\">"
            << static_cast<int>(std::lround(v)) << "</text>\n";
        const double tt = 1.0 + (static_cast<double>(t_max) - 1.0) * tick / 4.0;
        out << "<line x1=\"" << sx(tt) << "\" y1=\"" << py + ph << "\" x2=\"" << sx(tt) << "\" y2=\"" << py + ph + 4
            << "\" stroke=\"black\"/>\n";
        out << "<text x=\"" << sx(tt) << "\" y=\"" << py + ph + 18 << "\" text-anchor=\"middle\" font-size=\"11\">"
            << static_cast<int>(std::lround(tt)) << "</text>\n";
    }
    out << "<text x=\"" << width / 2 << "\" y=\"" << height - 8
        << "\" text-anchor=\"middle\" font-size=\"12\">OFDM symbol index t</text>\n";

    int series = 0;
    for (const RunMetrics &rm : sr.runs) {
        const char *color = palette[series % 10];
        out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
        for (size_t t = 0; t < rm.convergence.size(); t++)
            out << sx(static_cast<double>(t + 1)) << "," << sy(rm.convergence[t]) << " ";
        out << "\"/>\n";
        out << "<text x=\"" << px + pw - 8 << "\" y=\"" << py + 16 + 14 * series
            << "\" text-anchor=\"end\" font-size=\"11\" fill=\"" << color << "\">G=" << rm.G << " "
            << mode_name(rm.mode) << "</text>\n";
        series++;
    }
    if (!sr.runs.empty()) {
        const double base = sr.runs.front().baseline_bits;
        out << "<line x1=\"" << sx(1) << "\" y1=\"" << sy(base) << "\" x2=\"" << sx(static_cast<double>(t_max))
            << "\" y2=\"" << sy(base) << "\" stroke=\"#555\" stroke-dasharray=\"5,4\"/>\n";
    }
    out << "</svg>\n";
    if (!out)
        throw io_error("write to '" + path + "' failed");
}

json run_to_json(const RunMetrics &rm) {
    json j;
    j["G"] = rm.G;
    j["M"] = rm.M;
    j["mode"] = mode_name(rm.mode);
    j["baseline_bits"] = rm.baseline_bits;
    j["adaptive_mean_bits"] = rm.adaptive_mean_bits;
    j["frozen_mean_bits"] = rm.frozen_mean_bits;
    j["entropy_bits_per_symbol"] = rm.entropy_bits_per_symbol;
    j["transition_entropy"] = rm.transition_entropy;
    j["noise_tolerance_bits"] = rm.noise_tolerance_bits;
    j["steady_state_t"] = rm.steady_state_t;
    if (std::isnan(rm.eigen_switching_rate))
        j["eigen_switching_rate"] = nullptr;
    else
        j["eigen_switching_rate"] = rm.eigen_switching_rate;
    j["total_adaptive_bits"] = rm.total_adaptive_bits;
    j["total_frozen_bits"] = rm.total_frozen_bits;
    j["messages"] = rm.messages;
    j["lossless_ok"] = rm.lossless_ok;
    j["sync_ok"] = rm.sync_ok;
    j["convergence"] = rm.convergence;
    j["converged_pooled"] = rm.converged_pooled;
    return j;
}

} // namespace

void emit_outputs(const ExperimentReport &report, const std::string &dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec)
        throw io_error("cannot create output directory '" + dir + "': " + ec.message());

    json tables = json::array();
    int table_index = 0;
    for (const ScenarioReport &sr : report.scenarios) {
        std::vector<ProbMode> modes;
        for (const RunMetrics &rm : sr.runs)
            if (std::find(modes.begin(), modes.end(), rm.mode) == modes.end())
                modes.push_back(rm.mode);
        for (ProbMode mode : modes) {
            table_index++;
            const std::string file = "table" + std::to_string(table_index) + ".csv";
            write_table_csv(dir + "/" + file, sr, mode);
            tables.push_back({{"file", file}, {"scenario", sr.name}, {"mode", mode_name(mode)}});
        }
        write_convergence_svg(dir + "/convergence_" + sr.name + ".svg", sr);
    }
    write_convergence_csv(dir + "/convergence.csv", report);

    json j;
    j["base_seed"] = report.base_seed;
    j["threads"] = report.threads;
    j["tables"] = tables;
    j["scenarios"] = json::array();
    for (const ScenarioReport &sr : report.scenarios) {
        json s;
        s["name"] = sr.name;
        s["config"] = sr.resolved_config;
        s["codebook_source"] = sr.codebook_source;
        s["codebook_j"] = sr.codebook_j;
        s["property1_deviation"] = sr.property1_deviation;
        s["warnings"] = sr.warnings;
        s["runs"] = json::array();
        for (const RunMetrics &rm : sr.runs)
            s["runs"].push_back(run_to_json(rm));
        j["scenarios"].push_back(std::move(s));
    }
    std::ofstream out = open_out(dir + "/report.json");
    out << j.dump(2) << "\n";
    if (!out)
        throw io_error("write to '" + dir + "/report.json' failed");
}

} // namespace gbf
