/*
 * Copyright 2026 The argstat Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef ARGSTAT_ARGSTAT_H_
#define ARGSTAT_ARGSTAT_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define ARGSTAT_API __declspec(dllexport)
#else
#define ARGSTAT_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes double as CLI exit codes. */
typedef enum argstat_status {
    ARGSTAT_OK = 0,
    ARGSTAT_FAILURE = 1,
    ARGSTAT_VALIDATION = 2,
    ARGSTAT_MISSING_DATA = 3,
    ARGSTAT_NUMERICAL = 4
} argstat_status;

typedef struct argstat_complex {
    double re;
    double im;
} argstat_complex;

/* Opaque handles. */
typedef struct argstat_result argstat_result;
typedef struct argstat_forms argstat_forms;

ARGSTAT_API const char* argstat_version(void);
/* Message of the last failing call on this thread; never NULL. */
ARGSTAT_API const char* argstat_last_error(void);
ARGSTAT_API void argstat_string_free(char* s);
ARGSTAT_API argstat_status argstat_sha256_hex(const char* data, size_t len, char** out);

/* format: "json", "csv", "svg", or an extra artifact name listed by
   argstat_result_artifacts. */
ARGSTAT_API argstat_status argstat_result_render(const argstat_result* r, const char* format, char** out);
/* JSON array of the formats this result can render. */
ARGSTAT_API argstat_status argstat_result_artifacts(const argstat_result* r, char** out);
/* Canonical JSON of the configuration echoed by the result. */
ARGSTAT_API argstat_status argstat_result_config(const argstat_result* r, char** out);
/* JSON array of warnings attached to the result. */
ARGSTAT_API argstat_status argstat_result_warnings(const argstat_result* r, char** out);
ARGSTAT_API void argstat_result_free(argstat_result* r);

/* Form files. lenient != 0 keeps the valid subset and records errors. */
ARGSTAT_API argstat_status argstat_forms_load(const char* path, int lenient, argstat_forms** out);
ARGSTAT_API size_t argstat_forms_count(const argstat_forms* f);
ARGSTAT_API argstat_status argstat_forms_find(const argstat_forms* f, const char* label, size_t* index);
ARGSTAT_API argstat_status argstat_forms_errors(const argstat_forms* f, char** out);
ARGSTAT_API argstat_status argstat_forms_serialize(const argstat_forms* f, char** out);
ARGSTAT_API void argstat_forms_free(argstat_forms* f);

/* Hecke algebra */
ARGSTAT_API argstat_status argstat_hecke_expand(int n, argstat_result** out);
ARGSTAT_API argstat_status argstat_hecke_check(int n_max, argstat_result** out);

/* Satake roots */
ARGSTAT_API argstat_status argstat_satake_solve(argstat_complex a1p, argstat_complex ap1, uint64_t p,
                                                argstat_result** out);
ARGSTAT_API argstat_status argstat_satake_powersums(argstat_complex a1p, argstat_complex ap1, int k_max,
                                                    argstat_result** out);

/* Smoothing weights */
ARGSTAT_API argstat_status argstat_weights_lambda(double x, uint64_t n_lo, uint64_t n_hi, argstat_result** out);
ARGSTAT_API argstat_status argstat_weights_primes(double bound, argstat_result** out);

/* S(t): t3 are the shifts of the zeta-product family zeta(s+it1)zeta(s+it2)zeta(s+it3). */
ARGSTAT_API argstat_status argstat_sfunc_oracle(const double t3[3], double t, double resolution,
                                                argstat_result** out);
/* forms may be NULL, in which case the zeta-product form for t3 is used. */
ARGSTAT_API argstat_status argstat_sfunc_approx(const argstat_forms* forms, size_t index, const double t3[3],
                                                double t, double x, double error_constant, argstat_result** out);
ARGSTAT_API argstat_status argstat_sfunc_lemma31(const double t3[3], argstat_complex s, double x, double window,
                                                 argstat_result** out);
ARGSTAT_API argstat_status argstat_sfunc_rvcheck(double t, argstat_result** out);

/* Spectral weight */
typedef struct argstat_spec_config {
    double mu0_im[3]; /* mu0 = i * mu0_im, zero sum */
    double eta;
    int A;
    double spacing; /* units of M */
    double cutoff;  /* units of M */
    unsigned threads;
} argstat_spec_config;

ARGSTAT_API void argstat_spec_config_default(argstat_spec_config* c);
ARGSTAT_API argstat_status argstat_spec_hsum(const argstat_spec_config* c, argstat_result** out);
ARGSTAT_API argstat_status argstat_spec_predict(const argstat_spec_config* c, uint64_t m1, uint64_t m2, uint64_t n1,
                                                uint64_t n2, double epsilon, argstat_result** out);

/* Simulation */
typedef struct argstat_sim_config {
    double prime_bound;
    double t;
    uint64_t sample_count;
    uint64_t seed;
    int n_max;
    int spectral; /* nonzero: weight draws by h around spec.mu0 */
    argstat_spec_config spec;
    unsigned threads;
} argstat_sim_config;

ARGSTAT_API void argstat_sim_config_default(argstat_sim_config* c);
ARGSTAT_API argstat_status argstat_sim_moments(const argstat_sim_config* c, argstat_result** out);
/* Same run; csv renders the histogram and svg the CDF overlay. */
ARGSTAT_API argstat_status argstat_sim_clt(const argstat_sim_config* c, argstat_result** out);
ARGSTAT_API argstat_status argstat_sim_audit(int n, int r, double t, argstat_result** out);

typedef struct argstat_zero_config {
    double theta;
    double logT;
    double H;
    int n;
    int k;
    double delta;
    double t;
    int forms;
    int zero_free;
    uint64_t seed;
    uint64_t draws;
} argstat_zero_config;

ARGSTAT_API void argstat_zero_config_default(argstat_zero_config* c);
ARGSTAT_API argstat_status argstat_sim_zerodensity(const argstat_zero_config* c, argstat_result** out);

/* Ingestion. NULL base_url reads ARGSTAT_LMFDB_URL; a fixture path skips the network.
   The result renders the form file as "json" and the quarantine as "rejects". */
typedef struct argstat_ingest_options {
    const char* base_url;
    const char* fixture;
    int limit;
    int backoff_ms;
} argstat_ingest_options;

ARGSTAT_API argstat_status argstat_ingest_lmfdb(const argstat_ingest_options* o, argstat_result** out);

/* Re-renders a persisted report JSON (moment reports: csv or svg bars). */
ARGSTAT_API argstat_status argstat_report_render(const char* json_text, const char* format, char** out);

#ifdef __cplusplus
}
#endif

#endif /* ARGSTAT_ARGSTAT_H_ */
