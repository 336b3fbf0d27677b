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

#include <gbfsim/gbfsim.h>

#include <CLI11.hpp>

#include <cinttypes>
#include <cstdio>
#include <string>

namespace {

// Exit codes: 0 success, 1 config error, 2 numeric failure, 3 I/O error.
int exit_code(gbf_status status) {
    switch (status) {
    case GBF_OK:
        return 0;
    case GBF_ERR_INVALID_ARGUMENT:
    case GBF_ERR_CONFIG:
    case GBF_ERR_PARSE:
        return 1;
    case GBF_ERR_NUMERIC:
    case GBF_ERR_RESOURCE:
        return 2;
    case GBF_ERR_IO:
        return 3;
    }
    return 2;
}

int fail(gbf_status status) {
    std::fprintf(stderr, "error: %s\n", gbf_last_error());
    return exit_code(status);
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"MIMO-OFDM limited-feedback simulator: correlated channels, Grassmannian "
                 "beamforming and adaptive entropy-coded index feedback"};
    app.set_version_flag("--version", gbf_version());
    app.require_subcommand(1);

    // simulate
    std::string config_path, out_dir = "out";
    uint64_t seed = 0;
    bool have_seed = false;
    int threads = 0;
    CLI::App *simulate = app.add_subcommand("simulate", "Run the experiments described by a config file");
    simulate->add_option("--config", config_path, "experiment config file")->required();
    simulate->add_option("--out", out_dir, "output directory (default: out)");
    simulate->add_option("--seed", seed, "override the config's base seed")->each([&](const std::string &) {
        have_seed = true;
    });
    simulate->add_option("--threads", threads, "worker threads for trials (default: all cores)");

    // codebook gen / check
    CLI::App *codebook = app.add_subcommand("codebook", "Generate or inspect beamforming codebooks");
    codebook->require_subcommand(1);

    int mt = 4, n = 64, restarts = 0, iterations = 0;
    uint64_t cb_seed = 7;
    std::string cb_out;
    CLI::App *gen = codebook->add_subcommand("gen", "Generate a codebook and write it to a file");
    gen->add_option("--mt", mt, "vector dimension (TX antennas)")->required();
    gen->add_option("--n", n, "codebook size")->required();
    gen->add_option("--seed", cb_seed, "generator seed (default: 7)");
    gen->add_option("--out", cb_out, "output file")->required();
    gen->add_option("--restarts", restarts, "optimizer restarts (default: 10)");
    gen->add_option("--iters", iterations, "optimizer iterations per restart (default: 2000)");

    std::string cb_path;
    CLI::App *check = codebook->add_subcommand("check", "Validate a codebook file and print its metrics");
    check->add_option("path", cb_path, "codebook file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int rc = app.exit(e); // prints help/usage or the error
        return rc == 0 ? 0 : 1;    // bad usage is a config error
    }

    if (simulate->parsed()) {
        const gbf_status status =
            gbf_run_experiment_file(config_path.c_str(), out_dir.c_str(), have_seed ? 1 : 0, seed, threads);
        if (status != GBF_OK)
            return fail(status);
        std::printf("report written to %s\n", out_dir.c_str());
        return 0;
    }

    if (gen->parsed()) {
        gbf_codebook *cb = nullptr;
        gbf_status status = gbf_codebook_generate(mt, n, cb_seed, restarts, iterations, &cb);
        if (status != GBF_OK)
            return fail(status);
        status = gbf_codebook_save(cb, cb_out.c_str());
        if (status != GBF_OK) {
            gbf_codebook_free(cb);
            return fail(status);
        }
        std::printf("codebook Mt=%d N=%d J=%.6f -> %s\n", gbf_codebook_dim(cb), gbf_codebook_size(cb),
                    gbf_codebook_min_distance(cb), cb_out.c_str());
        gbf_codebook_free(cb);
        return 0;
    }

    // codebook check
    gbf_codebook *cb = nullptr;
    gbf_status status = gbf_codebook_load(cb_path.c_str(), &cb);
    if (status != GBF_OK)
        return fail(status);
    gbf_transition_table *tt = nullptr;
    status = gbf_transition_table_build(cb, &tt);
    if (status != GBF_OK) {
        gbf_codebook_free(cb);
        return fail(status);
    }
    std::printf("Mt = %d\n", gbf_codebook_dim(cb));
    std::printf("N = %d\n", gbf_codebook_size(cb));
    std::printf("J = %.6f\n", gbf_codebook_min_distance(cb));
    std::printf("property1_deviation = %.6g\n", gbf_transition_table_beta_deviation(tt));
    gbf_transition_table_free(tt);
    gbf_codebook_free(cb);
    return 0;
}
