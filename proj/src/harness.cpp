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

#include "harness.hpp"

#include "beamform.hpp"
#include "errors.hpp"
#include "numerics.hpp"

#include <atomic>
#include <bit>
#include <cmath>
#include <cstdio>
#include <limits>
#include <mutex>
#include <thread>

namespace gbf {

namespace {

// Frozen-pass channel streams live in a disjoint stream-id range so they
// never collide with the adaptive-pass streams (which use the trial index).
constexpr uint64_t kFrozenStreamBase = uint64_t(1) << 32;

struct TrialOutput {
    // Indexed by run = g_index * mode_count + mode_index.
    std::vector<std::vector<uint64_t>> bits; // [run][t]
    std::vector<uint64_t> frozen_bits;       // [run] summed over the frozen pass
    std::vector<uint64_t> frozen_messages;   // [run]
    std::vector<uint8_t> lossless;           // [run]
    std::vector<uint8_t> sync;               // [run]
    std::vector<ProbabilityModel> final_models; // [run]
    // Eigen-switching tallies (filled by trial 0 only): [g_index]
    std::vector<uint64_t> switch_events;
    std::vector<uint64_t> switch_pairs;
};

struct ScenarioContext {
    const ScenarioConfig *sc = nullptr;
    uint64_t base_seed = 0;
    Codebook codebook;
    std::shared_ptr<const TransitionTable> table;
    ChannelSampler *sampler = nullptr;
    std::vector<ClusterConfig> cluster_configs;
};

TrialOutput run_trial(const ScenarioContext &ctx, int trial) {
    const ScenarioConfig &sc = *ctx.sc;
    const int g_count = static_cast<int>(ctx.cluster_configs.size());
    const int mode_count = static_cast<int>(sc.modes.size());
    const int runs = g_count * mode_count;
    const int t_total = sc.symbols;
    const int frozen_total = sc.frozen_symbols < 0 ? sc.symbols : sc.frozen_symbols;
    const int n = ctx.codebook.n;

    TrialOutput out;
    out.bits.assign(runs, std::vector<uint64_t>(t_total, 0));
    out.frozen_bits.assign(runs, 0);
    out.frozen_messages.assign(runs, 0);
    out.lossless.assign(runs, 1);
    out.sync.assign(runs, 1);
    out.switch_events.assign(g_count, 0);
    out.switch_pairs.assign(g_count, 0);

    std::vector<CodecSession> encoders, decoders;
    encoders.reserve(runs);
    decoders.reserve(runs);
    for (int gi = 0; gi < g_count; gi++) {
        for (int mi = 0; mi < mode_count; mi++) {
            encoders.emplace_back(CodecRole::encoder, sc.modes[mi], ctx.table, sc.rebuild_every);
            decoders.emplace_back(CodecRole::decoder, sc.modes[mi], ctx.table, sc.rebuild_every);
        }
    }

    const bool track_switching = trial == 0 && sc.switching_symbols > 0 && sc.correlation.Mr >= 2;

    Rng rng = Rng::stream(ctx.base_seed, static_cast<uint64_t>(trial));
    for (int t = 0; t < t_total; t++) {
        const ChannelTensor ch = ctx.sampler->sample(rng);
        const std::vector<double> obj = subcarrier_objectives(ch, ctx.codebook);

        // Top-2 right singular vectors per subcarrier, for the switching
        // diagnostic of this symbol.
        std::vector<cvec> v1, v2;
        if (track_switching && t < sc.switching_symbols) {
            v1.assign(sc.correlation.L, cvec());
            v2.assign(sc.correlation.L, cvec());
            for (int l = 0; l < sc.correlation.L; l++) {
                const CMat h = ch.subcarrier_matrix(l);
                const EigResult eig = hermitian_eig(h.adjoint() * h);
                v1[l].resize(sc.correlation.Mt);
                v2[l].resize(sc.correlation.Mt);
                for (int r = 0; r < sc.correlation.Mt; r++) {
                    v1[l][r] = eig.eigenvectors(r, 0);
                    v2[l][r] = eig.eigenvectors(r, 1);
                }
            }
        }

        for (int gi = 0; gi < g_count; gi++) {
            const ClusterConfig &cfg = ctx.cluster_configs[gi];
            const IndexVector iv = select_from_objectives(obj, cfg, n);
            const SymbolVector sv = differential_encode_indices(iv, *ctx.table);

            if (!v1.empty() && cfg.M >= 2) {
                const int half = (cfg.G - 1) / 2;
                for (int m = 0; m + 1 < cfg.M; m++) {
                    const cvec &a1 = v1[m * cfg.G + half];
                    const cvec &a2 = v2[m * cfg.G + half];
                    const cvec &b1 = v1[(m + 1) * cfg.G + half];
                    if (std::abs(inner(b1, a2)) > std::abs(inner(b1, a1)))
                        out.switch_events[gi]++;
                    out.switch_pairs[gi]++;
                }
            }

            for (int mi = 0; mi < mode_count; mi++) {
                const int run = gi * mode_count + mi;
                const FeedbackMessage msg = encoders[run].encode(sv);
                out.bits[run][t] = msg.bit_count;
                const SymbolVector back = decoders[run].decode(msg);
                if (differential_decode_indices(back, *ctx.table) != iv)
                    out.lossless[run] = 0;
                if (!encoders[run].in_sync_with(decoders[run]))
                    out.sync[run] = 0;
            }
        }
    }

    // Frozen pass: converged tables, fresh channel stream, no adaptation.
    std::vector<FrozenCodec> frozen;
    frozen.reserve(runs);
    for (int run = 0; run < runs; run++)
        frozen.push_back(FrozenCodec::from_session(encoders[run]));

    Rng frozen_rng = Rng::stream(ctx.base_seed, kFrozenStreamBase + static_cast<uint64_t>(trial));
    for (int t = 0; t < frozen_total; t++) {
        const ChannelTensor ch = ctx.sampler->sample(frozen_rng);
        const std::vector<double> obj = subcarrier_objectives(ch, ctx.codebook);
        for (int gi = 0; gi < g_count; gi++) {
            const IndexVector iv = select_from_objectives(obj, ctx.cluster_configs[gi], n);
            const SymbolVector sv = differential_encode_indices(iv, *ctx.table);
            for (int mi = 0; mi < mode_count; mi++) {
                const int run = gi * mode_count + mi;
                const FeedbackMessage msg = frozen[run].encode(sv);
                out.frozen_bits[run] += msg.bit_count;
                out.frozen_messages[run]++;
                if (frozen[run].decode(msg) != sv)
                    out.lossless[run] = 0;
            }
        }
    }

    for (int run = 0; run < runs; run++)
        out.final_models.push_back(encoders[run].model());
    return out;
}

ScenarioReport run_scenario(const ScenarioConfig &sc, uint64_t base_seed, int threads) {
    ScenarioReport report;
    report.name = sc.name;
    report.resolved_config = sc.resolved();

    ScenarioContext ctx;
    ctx.sc = &sc;
    ctx.base_seed = base_seed;
    ctx.codebook = resolve_codebook(sc.codebook);
    if (ctx.codebook.mt != sc.correlation.Mt)
        throw config_error("scenario '" + sc.name + "': codebook dimension " + std::to_string(ctx.codebook.mt) +
                           " does not match tx_antennas " + std::to_string(sc.correlation.Mt));
    ctx.table = std::make_shared<const TransitionTable>(build_transition_table(ctx.codebook));
    for (int g : sc.cluster_sizes)
        ctx.cluster_configs.emplace_back(sc.correlation.L, g);

    report.codebook_source = ctx.codebook.source;
    report.codebook_j = ctx.codebook.min_distance;
    report.property1_deviation = check_property1(*ctx.table);
    if (sc.symbols < 30)
        report.warnings.push_back("symbols = " + std::to_string(sc.symbols) +
                                  " < 30: steady-state detection is unreliable");

    ChannelSampler sampler(sc.correlation);
    ctx.sampler = &sampler;

    // Trials are independent; their rng streams depend only on the trial
    // index, so any thread assignment yields identical results.
    std::vector<TrialOutput> trials(sc.trials);
    const int workers = std::max(1, std::min(threads, sc.trials));
    if (workers == 1) {
        for (int trial = 0; trial < sc.trials; trial++)
            trials[trial] = run_trial(ctx, trial);
    } else {
        std::atomic<int> next{0};
        std::exception_ptr failure;
        std::mutex failure_mutex;
        auto work = [&]() {
            try {
                for (int trial = next.fetch_add(1); trial < sc.trials; trial = next.fetch_add(1))
                    trials[trial] = run_trial(ctx, trial);
            } catch (...) {
                std::lock_guard<std::mutex> lock(failure_mutex);
                if (!failure)
                    failure = std::current_exception();
            }
        };
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; w++)
            pool.emplace_back(work);
        for (std::thread &th : pool)
            th.join();
        if (failure)
            std::rethrow_exception(failure);
    }

    const int g_count = static_cast<int>(ctx.cluster_configs.size());
    const int mode_count = static_cast<int>(sc.modes.size());
    const int n = ctx.codebook.n;
    const int header_bits = std::bit_width(static_cast<unsigned>(n)) - 1;
    const int frozen_total = sc.frozen_symbols < 0 ? sc.symbols : sc.frozen_symbols;

    for (int gi = 0; gi < g_count; gi++) {
        for (int mi = 0; mi < mode_count; mi++) {
            const int run = gi * mode_count + mi;
            RunMetrics rm;
            rm.G = ctx.cluster_configs[gi].G;
            rm.M = ctx.cluster_configs[gi].M;
            rm.mode = sc.modes[mi];
            rm.baseline_bits = static_cast<double>(rm.M) * header_bits;

            rm.convergence.assign(sc.symbols, 0.0);
            rm.lossless_ok = true;
            rm.sync_ok = true;
            std::vector<double> frozen_trial_means(sc.trials, 0.0);
            for (int trial = 0; trial < sc.trials; trial++) {
                const TrialOutput &to = trials[trial];
                for (int t = 0; t < sc.symbols; t++) {
                    rm.convergence[t] += static_cast<double>(to.bits[run][t]);
                    rm.total_adaptive_bits += to.bits[run][t];
                }
                rm.total_frozen_bits += to.frozen_bits[run];
                frozen_trial_means[trial] =
                    static_cast<double>(to.frozen_bits[run]) / static_cast<double>(to.frozen_messages[run]);
                rm.messages += sc.symbols;
                rm.lossless_ok = rm.lossless_ok && to.lossless[run];
                rm.sync_ok = rm.sync_ok && to.sync[run];
            }
            for (double &v : rm.convergence)
                v /= sc.trials;
            rm.adaptive_mean_bits = static_cast<double>(rm.total_adaptive_bits) /
                                    (static_cast<double>(sc.symbols) * sc.trials);
            rm.frozen_mean_bits = static_cast<double>(rm.total_frozen_bits) /
                                  (static_cast<double>(frozen_total) * sc.trials);
            rm.steady_state_t = steady_state_symbol(rm.convergence);

            double mean = 0.0, var = 0.0;
            for (double v : frozen_trial_means)
                mean += v;
            mean /= sc.trials;
            for (double v : frozen_trial_means)
                var += (v - mean) * (v - mean);
            rm.noise_tolerance_bits =
                sc.trials > 1 ? 3.0 * std::sqrt(var / (sc.trials - 1)) / std::sqrt(static_cast<double>(sc.trials))
                              : 1.0;

            // Converged statistics aggregated over all trials.
            std::vector<uint64_t> pooled(n, 0);
            uint64_t pooled_total = 0;
            double entropy_weighted = 0.0;
            if (sc.modes[mi] == ProbMode::pooled) {
                for (int trial = 0; trial < sc.trials; trial++) {
                    const ProbabilityModel &model = trials[trial].final_models[run];
                    for (int k = 0; k < n; k++)
                        pooled[k] += model.count(0, k);
                }
                for (uint64_t c : pooled)
                    pooled_total += c;
                std::vector<double> p(n, 0.0);
                for (int k = 0; k < n; k++)
                    p[k] = pooled_total ? static_cast<double>(pooled[k]) / pooled_total : 0.0;
                rm.converged_pooled = p;
                rm.transition_entropy = entropy_bits(p);
                entropy_weighted = rm.transition_entropy;
            } else {
                std::vector<uint64_t> counts(static_cast<size_t>(n) * n, 0);
                std::vector<uint64_t> totals(n, 0);
                for (int trial = 0; trial < sc.trials; trial++) {
                    const ProbabilityModel &model = trials[trial].final_models[run];
                    for (int i = 0; i < n; i++) {
                        for (int k = 0; k < n; k++)
                            counts[static_cast<size_t>(i) * n + k] += model.count(i, k);
                        totals[i] += model.total(i);
                    }
                }
                for (int i = 0; i < n; i++) {
                    pooled_total += totals[i];
                    for (int k = 0; k < n; k++)
                        pooled[k] += counts[static_cast<size_t>(i) * n + k];
                }
                std::vector<double> p(n, 0.0);
                for (int k = 0; k < n; k++)
                    p[k] = pooled_total ? static_cast<double>(pooled[k]) / pooled_total : 0.0;
                rm.converged_pooled = p;
                rm.transition_entropy = entropy_bits(p);
                for (int i = 0; i < n; i++) {
                    if (!totals[i])
                        continue;
                    std::vector<double> row(n, 0.0);
                    for (int k = 0; k < n; k++)
                        row[k] = static_cast<double>(counts[static_cast<size_t>(i) * n + k]) / totals[i];
                    entropy_weighted += static_cast<double>(totals[i]) / pooled_total * entropy_bits(row);
                }
            }
            rm.entropy_bits_per_symbol = header_bits + (rm.M - 1) * entropy_weighted;

            if (sc.correlation.Mr >= 2 && rm.M >= 2 && trials[0].switch_pairs[gi] > 0)
                rm.eigen_switching_rate = static_cast<double>(trials[0].switch_events[gi]) /
                                          static_cast<double>(trials[0].switch_pairs[gi]);
            else
                rm.eigen_switching_rate = std::numeric_limits<double>::quiet_NaN();

            report.runs.push_back(std::move(rm));
        }
    }
    return report;
}

} // namespace

int steady_state_symbol(const std::vector<double> &curve) {
    const int t_total = static_cast<int>(curve.size());
    if (t_total == 0)
        return 0;
    const int tail = std::min(10, t_total);
    double final_mean = 0.0;
    for (int t = t_total - tail; t < t_total; t++)
        final_mean += curve[t];
    final_mean /= tail;

    for (int t = std::min(5, t_total); t <= t_total; t++) {
        const int window = std::min(5, t);
        double trailing = 0.0;
        for (int u = t - window; u < t; u++)
            trailing += curve[u];
        trailing /= window;
        if (std::abs(trailing - final_mean) <= 0.05 * std::abs(final_mean))
            return t;
    }
    return t_total;
}

Codebook resolve_codebook(const CodebookSource &src) {
    if (src.kind == CodebookSource::Kind::file)
        return load_codebook(src.path);
    return generate_glp_codebook(src.mt, src.n, src.seed);
}

ExperimentReport run_experiment(const ExperimentConfig &cfg, int threads) {
    if (cfg.scenarios.empty())
        throw config_error("experiment has no scenarios");
    if (threads < 1)
        threads = 1;

    ExperimentReport report;
    report.base_seed = cfg.base_seed;
    report.threads = threads;
    for (const ScenarioConfig &sc : cfg.scenarios)
        report.scenarios.push_back(run_scenario(sc, cfg.base_seed, threads));
    return report;
}

} // namespace gbf
