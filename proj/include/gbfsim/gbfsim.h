/* SPDX-License-Identifier: Apache-2.0
 *
 * gbfsim - limited-feedback beamforming simulator for MIMO-OFDM
 * Copyright (C) 2026 gbfsim developers
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 * ------------------------------------------------------------------------
 *
 * C API of the gbfsim shared library.
 *
 * Conventions:
 *  - Functions return gbf_status; GBF_OK is 0. On failure, gbf_last_error()
 *    returns a thread-local message describing the most recent error.
 *  - Objects are opaque handles created by the create, load and generate
 *    functions and released by the matching free function (NULL accepted).
 *  - Codeword indexes and transition symbols are 0-based. Transition symbol
 *    0 means "same codeword as the previous cluster".
 *  - Complex arrays are interleaved doubles [re0, im0, re1, im1, ...] in
 *    row-major order.
 */

#ifndef GBFSIM_H
#define GBFSIM_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum gbf_status {
    GBF_OK = 0,
    GBF_ERR_INVALID_ARGUMENT = 1, /* bad inputs, domain violations */
    GBF_ERR_CONFIG = 2,           /* invalid configuration */
    GBF_ERR_PARSE = 3,            /* file format errors */
    GBF_ERR_NUMERIC = 4,          /* numerical failure (no convergence, framing) */
    GBF_ERR_IO = 5,               /* filesystem errors */
    GBF_ERR_RESOURCE = 6          /* size caps exceeded */
} gbf_status;

const char *gbf_version(void);

/* Thread-local message for the last failing call in this thread. */
const char *gbf_last_error(void);

/* ---------------------------------------------------------------- */
/* Codebooks and transition tables                                   */
/* ---------------------------------------------------------------- */

typedef struct gbf_codebook gbf_codebook;
typedef struct gbf_transition_table gbf_transition_table;

/* Text format: '#' comments, a "Mt N" header, then N rows of 2*Mt reals. */
gbf_status gbf_codebook_load(const char *path, gbf_codebook **out);

/* Deterministic for a fixed seed. restarts/iterations <= 0 pick defaults. */
gbf_status gbf_codebook_generate(int mt, int n, uint64_t seed, int restarts, int iterations, gbf_codebook **out);

gbf_status gbf_codebook_save(const gbf_codebook *cb, const char *path);
void gbf_codebook_free(gbf_codebook *cb);

int gbf_codebook_dim(const gbf_codebook *cb);  /* Mt */
int gbf_codebook_size(const gbf_codebook *cb); /* N */

/* Minimum pairwise sqrt(1 - |v_k^H v_l|^2) (the packing quality J). */
double gbf_codebook_min_distance(const gbf_codebook *cb);

/* Codeword into re/im arrays of length Mt. */
gbf_status gbf_codebook_vector(const gbf_codebook *cb, int index, double *re, double *im);

gbf_status gbf_transition_table_build(const gbf_codebook *cb, gbf_transition_table **out);
void gbf_transition_table_free(gbf_transition_table *tt);

/* Max spread of the rank-k correlation value across source codewords. */
double gbf_transition_table_beta_deviation(const gbf_transition_table *tt);

/* xi: rank (transition symbol) of `target` in `source`'s ordering. */
int gbf_transition_symbol(const gbf_transition_table *tt, int source, int target);
/* q: target codeword at `rank` in `source`'s ordering. */
int gbf_transition_target(const gbf_transition_table *tt, int source, int rank);
/* beta: sorted |inner product|^2 at `rank`. */
double gbf_transition_beta(const gbf_transition_table *tt, int source, int rank);

/* ---------------------------------------------------------------- */
/* Correlated channel sampling                                       */
/* ---------------------------------------------------------------- */

typedef struct gbf_channel gbf_channel;

typedef enum gbf_freq_model { GBF_FREQ_EXPONENTIAL = 0, GBF_FREQ_EXPLICIT = 1 } gbf_freq_model;
typedef enum gbf_spatial_model {
    GBF_SPATIAL_NONE = 0,
    GBF_SPATIAL_MACRO = 1, /* 3GPP SCM macro-cell preset, 4 TX / 2 RX */
    GBF_SPATIAL_EXPLICIT = 2
} gbf_spatial_model;

/* rf is an interleaved L x L matrix (only for GBF_FREQ_EXPLICIT); rt/rr are
 * mt x mt and mr x mr (only for GBF_SPATIAL_EXPLICIT). The constructor
 * factorizes the full joint correlation matrix, which can take seconds for
 * L*mt*mr in the hundreds; factors are cached per process. */
gbf_status gbf_channel_create(int l, int mt, int mr, gbf_freq_model freq_model, double adjacent_corr,
                              const double *rf, gbf_spatial_model spatial_model, const double *rt, const double *rr,
                              gbf_channel **out);
void gbf_channel_free(gbf_channel *ch);

/* One OFDM symbol's channel into an interleaved array of mr*mt*l complex
 * gains, flat index ((l*Mt)+s)*Mr + r. Draw `count` symbols sequentially
 * from the stream (seed, stream); identical arguments reproduce identical
 * gains. */
gbf_status gbf_channel_sample(const gbf_channel *ch, uint64_t seed, uint64_t stream, int count, double *gains);

/* Max-min-SNR codeword selection per cluster of g subcarriers; gains as
 * produced by gbf_channel_sample for one symbol, indices_out of length l/g. */
gbf_status gbf_select_indices(const gbf_codebook *cb, const double *gains, int l, int mt, int mr, int g,
                              int *indices_out);

/* ---------------------------------------------------------------- */
/* Adaptive feedback codec sessions                                  */
/* ---------------------------------------------------------------- */

typedef struct gbf_session gbf_session;

typedef enum gbf_role { GBF_ROLE_ENCODER = 0, GBF_ROLE_DECODER = 1 } gbf_role;
typedef enum gbf_prob_mode { GBF_PROB_POOLED = 0, GBF_PROB_PER_INDEX = 1 } gbf_prob_mode;

/* N must be a power of two (raw header width log2 N). Encoder and decoder
 * sessions built from the same codebook stay bit-synchronized when fed the
 * same message sequence. */
gbf_status gbf_session_create(const gbf_codebook *cb, gbf_role role, gbf_prob_mode mode, int rebuild_every,
                              gbf_session **out);
void gbf_session_free(gbf_session *s);

/* Tight upper bound on one message's size for m clusters, in bytes. */
size_t gbf_session_max_message_bytes(const gbf_session *s, int m);

/* Encodes m cluster indices into buf (capacity bytes); *bit_count receives
 * the exact unpadded message length. Wire layout: log2(N) raw header bits,
 * then Huffman codewords, MSB-first, zero-padded to a byte boundary. */
gbf_status gbf_session_encode(gbf_session *s, const int *indices, int m, uint8_t *buf, size_t capacity,
                              size_t *bit_count);

/* Decodes a message of exactly m cluster indices. */
gbf_status gbf_session_decode(gbf_session *s, const uint8_t *buf, size_t bit_count, int *indices_out, int m);

/* ---------------------------------------------------------------- */
/* Experiments                                                       */
/* ---------------------------------------------------------------- */

/* Runs the experiment described by a config file and writes table<N>.csv,
 * convergence.csv, report.json and convergence_<scenario>.svg into out_dir.
 * seed_override replaces the config's seed when has_seed_override != 0;
 * threads <= 0 selects the hardware concurrency. */
gbf_status gbf_run_experiment_file(const char *config_path, const char *out_dir, int has_seed_override,
                                   uint64_t seed_override, int threads);

/* Same, with the config text supplied directly; relative paths inside the
 * config resolve against base_dir (NULL means the current directory). */
gbf_status gbf_run_experiment_string(const char *config_text, const char *base_dir, const char *out_dir,
                                     int has_seed_override, uint64_t seed_override, int threads);

#ifdef __cplusplus
}
#endif

#endif /* GBFSIM_H */
