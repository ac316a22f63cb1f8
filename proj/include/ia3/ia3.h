// Copyright 2026 The ia3 Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/*
 * C interface of the ia3 interference-alignment workbench.
 *
 * Objects are opaque handles owned by the caller and released with the
 * matching *_free function. Every fallible call returns an ia3_status; on
 * failure ia3_last_error() describes the problem for the calling thread.
 * Strings returned through char** out-parameters are heap allocated and must
 * be released with ia3_string_free().
 */

#ifndef IA3_IA3_H
#define IA3_IA3_H

#include <stddef.h>
#include <stdint.h>

#if defined(IA3_BUILDING_LIBRARY)
#define IA3_API __attribute__((visibility("default")))
#else
#define IA3_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ia3_status {
  IA3_OK = 0,
  IA3_ERR_INVALID_INPUT = 1,
  IA3_ERR_REGIME = 2,
  IA3_ERR_INFEASIBLE = 3,
  IA3_ERR_NOT_CERTIFIABLE = 4,
  IA3_ERR_INTERNAL = 5
} ia3_status;

typedef enum ia3_field { IA3_FIELD_COMPLEX = 0, IA3_FIELD_REAL = 1 } ia3_field;

typedef enum ia3_table_format { IA3_FORMAT_CSV = 0, IA3_FORMAT_JSON = 1 } ia3_table_format;

typedef struct ia3_channel ia3_channel;
typedef struct ia3_scheme ia3_scheme;
typedef struct ia3_certificate ia3_certificate;

/* rel_rank <= 0 selects the size-dependent default cutoff. */
typedef struct ia3_tolerance {
  double rel_rank;
  double leakage;
} ia3_tolerance;

/* Zero / negative fields mean "choose automatically". */
typedef struct ia3_synth_options {
  int l;       /* chain depth, < 0 for auto */
  int dtilde;  /* streams per chain block, <= 0 for auto */
  int t;       /* extension factor, <= 0 for auto */
  int t_max;   /* search bound for the extension factor, <= 0 for 24 */
} ia3_synth_options;

IA3_API const char* ia3_version(void);
IA3_API const char* ia3_last_error(void);
IA3_API const char* ia3_status_name(ia3_status status);
IA3_API void ia3_string_free(char* s);
IA3_API ia3_tolerance ia3_default_tolerance(void);
IA3_API ia3_synth_options ia3_default_synth_options(void);

/* Channels */
IA3_API ia3_status ia3_channel_generate(int m, int n, uint64_t seed, ia3_field field, ia3_channel** out);
IA3_API ia3_status ia3_channel_extend(const ia3_channel* ch, int t, ia3_channel** out);
IA3_API ia3_status ia3_channel_reciprocal(const ia3_channel* ch, ia3_channel** out);
IA3_API ia3_status ia3_channel_from_json(const char* json, ia3_channel** out);
IA3_API ia3_status ia3_channel_to_json(const ia3_channel* ch, char** out);
IA3_API ia3_status ia3_channel_dims(const ia3_channel* ch, int* m, int* n, int* t);
IA3_API void ia3_channel_free(ia3_channel* ch);

/* Schemes: a channel (extended as needed) plus its precoders. */
IA3_API ia3_status ia3_synthesize(const ia3_channel* base, const ia3_synth_options* opts,
                                  const ia3_tolerance* tol, ia3_scheme** out);
IA3_API ia3_status ia3_scheme_from_json(const char* channel_json, const char* precoders_json,
                                        ia3_scheme** out);
IA3_API ia3_status ia3_scheme_channel_json(const ia3_scheme* s, char** out);
IA3_API ia3_status ia3_scheme_precoders_json(const ia3_scheme* s, char** out);
IA3_API ia3_status ia3_scheme_streams(const ia3_scheme* s, int per_user[3], int* t);
IA3_API void ia3_scheme_free(ia3_scheme* s);

/* Certification. Failing schemes still yield a certificate. */
IA3_API ia3_status ia3_certify(const ia3_scheme* s, const ia3_tolerance* tol, ia3_certificate** out);
IA3_API int ia3_certificate_pass(const ia3_certificate* c);
IA3_API ia3_status ia3_certificate_total_dof(const ia3_certificate* c, int64_t* num, int64_t* den);
IA3_API double ia3_certificate_max_leakage(const ia3_certificate* c);
IA3_API ia3_status ia3_certificate_to_json(const ia3_certificate* c, char** out);
IA3_API ia3_status ia3_certificate_to_text(const ia3_certificate* c, char** out);
IA3_API void ia3_certificate_free(ia3_certificate* c);

/* Sum-rate slope over an SNR grid lo:step:hi (dB). Writes a JSON curve. */
IA3_API ia3_status ia3_estimate_slope(const ia3_scheme* s, const ia3_tolerance* tol, double snr_lo_db,
                                      double snr_hi_db, double snr_step_db, double noise_variance,
                                      double* slope, char** curve_json);

/* Exact bounds and tables. */
IA3_API ia3_status ia3_bounds_json(int m, int n, int t_max, char** out);
IA3_API ia3_status ia3_sweep_fig2(int n, int m_lo, int m_hi, int t_max, ia3_table_format format, char** out);
IA3_API ia3_status ia3_sweep_fig1(int l_lo, int l_hi, int ratio_steps, ia3_table_format format, char** out);

#ifdef __cplusplus
}
#endif

#endif /* IA3_IA3_H */
