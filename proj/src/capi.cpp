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

#include "gbfsim/gbfsim.h"

#include "beamform.hpp"
#include "channel.hpp"
#include "codebook.hpp"
#include "errors.hpp"
#include "feedback.hpp"
#include "harness.hpp"

#include <cstring>
#include <thread>

using namespace gbf;

namespace {

thread_local std::string t_last_error;

void set_error(const char *msg) { t_last_error = msg ? msg : "unknown error"; }

// Maps the core exception taxonomy onto C status codes.
template <typename Fn> gbf_status guarded(Fn &&fn) {
    try {
        fn();
        return GBF_OK;
    } catch (const config_error &e) {
        set_error(e.what());
        return GBF_ERR_CONFIG;
    } catch (const parse_error &e) {
        set_error(e.what());
        return GBF_ERR_PARSE;
    } catch (const io_error &e) {
        set_error(e.what());
        return GBF_ERR_IO;
    } catch (const numeric_error &e) {
        set_error(e.what());
        return GBF_ERR_NUMERIC;
    } catch (const std::length_error &e) {
        set_error(e.what());
        return GBF_ERR_RESOURCE;
    } catch (const std::invalid_argument &e) {
        set_error(e.what());
        return GBF_ERR_INVALID_ARGUMENT;
    } catch (const std::exception &e) {
        set_error(e.what());
        return GBF_ERR_NUMERIC;
    }
}

CMat interleaved_to_cmat(const double *data, int rows, int cols) {
    CMat m(rows, cols);
    for (int r = 0; r < rows; r++)
        for (int c = 0; c < cols; c++) {
            const size_t base = 2 * (static_cast<size_t>(r) * cols + c);
            m(r, c) = cx(data[base], data[base + 1]);
        }
    return m;
}

} // namespace

struct gbf_codebook {
    Codebook cb;
};

struct gbf_transition_table {
    std::shared_ptr<const TransitionTable> tt;
};

struct gbf_channel {
    ChannelSampler sampler;
};

struct gbf_session {
    CodecSession session;
    std::shared_ptr<const TransitionTable> table;
};

extern "C" {

const char *gbf_version(void) { return "1.0.0"; }

const char *gbf_last_error(void) { return t_last_error.c_str(); }

gbf_status gbf_codebook_load(const char *path, gbf_codebook **out) {
    if (!path || !out) {
        set_error("null argument");
        return GBF_ERR_INVALID_ARGUMENT;
    }
    return guarded([&] { *out = new gbf_codebook{load_codebook(path)}; });
}

gbf_status gbf_codebook_generate(int mt, int n, uint64_t seed, int restarts, int iterations, gbf_codebook **out) {
    if (!out) {
        set_error("null argument");
        return GBF_ERR_INVALID_ARGUMENT;
    }
    if (restarts <= 0)
        restarts = 10;
    if (iterations <= 0)
        iterations = 2000;
    return guarded([&] { *out = new gbf_codebook{generate_glp_codebook(mt, n, seed, restarts, iterations)}; });
}

gbf_status gbf_codebook_save(const gbf_codebook *cb, const char *path) {
    if (!cb || !path) {
        set_error("null argument");
        return GBF_ERR_INVALID_ARGUMENT;
    }
    return guarded([&] { save_codebook(cb->cb, path); });
}

void gbf_codebook_free(gbf_codebook *cb) { delete cb; }

int gbf_codebook_dim(const gbf_codebook *cb) { return cb ? cb->cb.mt : 0; }

int gbf_codebook_size(const gbf_codebook *cb) { return cb ? cb->cb.n : 0; }

double gbf_codebook_min_distance(const gbf_codebook *cb) { return cb ? cb->cb.min_distance : 0.0; }

gbf_status gbf_codebook_vector(const gbf_codebook *cb, int index, double *re, double *im) {
    if (!cb || !re || !im) {
        set_error("null argument");
        return GBF_ERR_INVALID_ARGUMENT;
    }
    if (index < 0 || index >= cb->cb.n) {
        set_error("codeword index out of range");
        return GBF_ERR_INVALID_ARGUMENT;
    }
    for (int t = 0; t < cb->cb.mt; t++) {
        re[t] = cb->cb.vectors[index][t].real();
        im[t] = cb->cb.vectors[index][t].imag();
    }
    return GBF_OK;
}

gbf_status gbf_transition_table_build(const gbf_codebook *cb, gbf_transition_table **out) {
    if (!cb || !out) {
        set_error("null argument");
        return GBF_ERR_INVALID_ARGUMENT;
    }
    return guarded([&] {
        *out = new gbf_transition_table{std::make_shared<const TransitionTable>(build_transition_table(cb->cb))};
    });
}

void gbf_transition_table_free(gbf_transition_table *tt) { delete tt; }

double gbf_transition_table_beta_deviation(const gbf_transition_table *tt) {
    return tt ? check_property1(*tt->tt) : 0.0;
}

int gbf_transition_symbol(const gbf_transition_table *tt, int source, int target) {
    if (!tt || source < 0 || source >= tt->tt->size() || target < 0 || target >= tt->tt->size())
        return -1;
    return tt->tt->symbol(source, target);
}

int gbf_transition_target(const gbf_transition_table *tt, int source, int rank) {
    if (!tt || source < 0 || source >= tt->tt->size() || rank < 0 || rank >= tt->tt->size())
        return -1;
    return tt->tt->target(source, rank);
}

double gbf_transition_beta(const gbf_transition_table *tt, int source, int rank) {
    if (!tt || source < 0 || source >= tt->tt->size() || rank < 0 || rank >= tt->tt->size())
        return -1.0;
    return tt->tt->beta(source, rank);
}

gbf_status gbf_channel_create(int l, int mt, int mr, gbf_freq_model freq_model, double adjacent_corr,
                              const double *rf, gbf_spatial_model spatial_model, const double *rt, const double *rr,
                              gbf_channel **out) {
    if (!out) {
        set_error("null argument");
        return GBF_ERR_INVALID_ARGUMENT;
    }
    return guarded([&] {
        CorrelationSpec spec;
        spec.L = l;
        spec.Mt = mt;
        spec.Mr = mr;
        switch (freq_model) {
        case GBF_FREQ_EXPONENTIAL:
            spec.freq_model = FreqModel::exponential_pdp;
            spec.adjacent_corr = adjacent_corr;
            break;
        case GBF_FREQ_EXPLICIT:
            if (!rf)
                throw std::invalid_argument("explicit frequency model needs a matrix");
            spec.freq_model = FreqModel::explicit_matrix;
            spec.freq_matrix = interleaved_to_cmat(rf, l, l);
            break;
        default:
            throw std::invalid_argument("unknown frequency model");
        }
        switch (spatial_model) {
        case GBF_SPATIAL_NONE:
            spec.spatial_model = SpatialModel::none;
            break;
        case GBF_SPATIAL_MACRO:
            if (mt != 4 || mr != 2)
                throw std::invalid_argument("the macro spatial preset is defined for 4 TX / 2 RX antennas");
            spec.spatial_model = SpatialModel::explicit_matrices;
            spec.r_tx = spatial_correlation_macro_tx();
            spec.r_rx = spatial_correlation_macro_rx();
            break;
        case GBF_SPATIAL_EXPLICIT:
            if (!rt || !rr)
                throw std::invalid_argument("explicit spatial model needs both matrices");
            spec.spatial_model = SpatialModel::explicit_matrices;
            spec.r_tx = interleaved_to_cmat(rt, mt, mt);
            spec.r_rx = interleaved_to_cmat(rr, mr, mr);
            break;
        default:
            throw std::invalid_argument("unknown spatial model");
        }
        *out = new gbf_channel{ChannelSampler(spec)};
    });
}

void gbf_channel_free(gbf_channel *ch) { delete ch; }

gbf_status gbf_channel_sample(const gbf_channel *ch, uint64_t seed, uint64_t stream, int count, double *gains) {
    if (!ch || !gains || count < 1) {
        set_error("null argument or count < 1");
        return GBF_ERR_INVALID_ARGUMENT;
    }
    return guarded([&] {
        Rng rng = Rng::stream(seed, stream);
        const CorrelationSpec &spec = ch->sampler.spec();
        const size_t per_symbol = static_cast<size_t>(spec.L) * spec.Mt * spec.Mr;
        for (int c = 0; c < count; c++) {
            const ChannelTensor t = ch->sampler.sample(rng);
            double *dst = gains + 2 * per_symbol * c;
            for (size_t i = 0; i < per_symbol; i++) {
                dst[2 * i] = t.data()[i].real();
                dst[2 * i + 1] = t.data()[i].imag();
            }
        }
    });
}

gbf_status gbf_select_indices(const gbf_codebook *cb, const double *gains, int l, int mt, int mr, int g,
                              int *indices_out) {
    if (!cb || !gains || !indices_out) {
        set_error("null argument");
        return GBF_ERR_INVALID_ARGUMENT;
    }
    return guarded([&] {
        ChannelTensor t(mr, mt, l);
        for (size_t i = 0; i < t.data().size(); i++)
            t.data()[i] = cx(gains[2 * i], gains[2 * i + 1]);
        const IndexVector iv = select_all_clusters(t, ClusterConfig(l, g), cb->cb);
        std::memcpy(indices_out, iv.data(), iv.size() * sizeof(int));
    });
}

gbf_status gbf_session_create(const gbf_codebook *cb, gbf_role role, gbf_prob_mode mode, int rebuild_every,
                              gbf_session **out) {
    if (!cb || !out) {
        set_error("null argument");
        return GBF_ERR_INVALID_ARGUMENT;
    }
    if (rebuild_every <= 0)
        rebuild_every = 1;
    return guarded([&] {
        auto table = std::make_shared<const TransitionTable>(build_transition_table(cb->cb));
        *out = new gbf_session{CodecSession(role == GBF_ROLE_ENCODER ? CodecRole::encoder : CodecRole::decoder,
                                            mode == GBF_PROB_POOLED ? ProbMode::pooled : ProbMode::per_index, table,
                                            rebuild_every),
                               table};
    });
}

void gbf_session_free(gbf_session *s) { delete s; }

size_t gbf_session_max_message_bytes(const gbf_session *s, int m) {
    return s ? s->session.max_message_bytes(m) : 0;
}

gbf_status gbf_session_encode(gbf_session *s, const int *indices, int m, uint8_t *buf, size_t capacity,
                              size_t *bit_count) {
    if (!s || !indices || !buf || !bit_count || m < 1) {
        set_error("null argument or m < 1");
        return GBF_ERR_INVALID_ARGUMENT;
    }
    return guarded([&] {
        const IndexVector iv(indices, indices + m);
        const SymbolVector sv = differential_encode_indices(iv, *s->table);
        const FeedbackMessage msg = s->session.encode(sv);
        if (msg.bytes.size() > capacity)
            throw std::length_error("message buffer too small");
        std::memcpy(buf, msg.bytes.data(), msg.bytes.size());
        *bit_count = msg.bit_count;
    });
}

gbf_status gbf_session_decode(gbf_session *s, const uint8_t *buf, size_t bit_count, int *indices_out, int m) {
    if (!s || !buf || !indices_out || m < 1) {
        set_error("null argument or m < 1");
        return GBF_ERR_INVALID_ARGUMENT;
    }
    return guarded([&] {
        FeedbackMessage msg;
        msg.bit_count = bit_count;
        msg.header_bits = s->session.header_bits();
        msg.bytes.assign(buf, buf + (bit_count + 7) / 8);
        const SymbolVector sv = s->session.decode(msg);
        if (static_cast<int>(sv.transitions.size()) + 1 != m)
            throw numeric_error("decoded cluster count does not match m");
        const IndexVector iv = differential_decode_indices(sv, *s->table);
        std::memcpy(indices_out, iv.data(), iv.size() * sizeof(int));
    });
}

gbf_status gbf_run_experiment_file(const char *config_path, const char *out_dir, int has_seed_override,
                                   uint64_t seed_override, int threads) {
    if (!config_path || !out_dir) {
        set_error("null argument");
        return GBF_ERR_INVALID_ARGUMENT;
    }
    return guarded([&] {
        ExperimentConfig cfg = load_experiment_config(config_path);
        if (has_seed_override)
            cfg.base_seed = seed_override;
        if (threads <= 0)
            threads = static_cast<int>(std::thread::hardware_concurrency());
        emit_outputs(run_experiment(cfg, threads), out_dir);
    });
}

gbf_status gbf_run_experiment_string(const char *config_text, const char *base_dir, const char *out_dir,
                                     int has_seed_override, uint64_t seed_override, int threads) {
    if (!config_text || !out_dir) {
        set_error("null argument");
        return GBF_ERR_INVALID_ARGUMENT;
    }
    return guarded([&] {
        ExperimentConfig cfg =
            parse_experiment_config(config_text, "<config>", base_dir ? base_dir : ".");
        if (has_seed_override)
            cfg.base_seed = seed_override;
        if (threads <= 0)
            threads = static_cast<int>(std::thread::hardware_concurrency());
        emit_outputs(run_experiment(cfg, threads), out_dir);
    });
}

} // extern "C"
