/*
 * Copyright 2026 The tridenom authors
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

/*
 * C interface of the tridenom shared library.
 *
 * Conventions:
 *  - Every function returns a trd_status; TRD_OK means success.
 *  - Big integers cross the boundary as decimal strings. Output strings are
 *    allocated by the library and must be released with trd_string_free.
 *  - Handles are opaque; release them with the matching *_free call.
 */

#ifndef TRIDENOM_H
#define TRIDENOM_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum trd_status {
  TRD_OK = 0,
  TRD_EINVAL = 1,   /* malformed argument */
  TRD_EDOMAIN = 2,  /* argument outside the mathematical domain */
  TRD_EINEXACT = 3, /* an exact division failed: implementation bug */
  TRD_ERANGE = 4,   /* out of a table's range */
  TRD_EINTERNAL = 5
} trd_status;

const char* trd_version(void);
const char* trd_status_str(trd_status status);
void trd_string_free(char* s);

/* ------------------------------------------------------------------ */
/* Brute-force oracle tables                                           */
/* ------------------------------------------------------------------ */

typedef struct trd_oracle trd_oracle;

/* kind: "triangles" or "squares". Rows 1..kmax, coefficients 0..nmax-1. */
trd_status trd_oracle_new(const char* kind, int kmax, long nmax,
                          trd_oracle** out);
void trd_oracle_free(trd_oracle* oracle);
trd_status trd_oracle_count(const trd_oracle* oracle, int k, long n,
                            char** out_decimal);

/* One-shot counts (recompute per call; use a handle inside loops). */
trd_status trd_triangle_count(int k, long n, char** out_decimal);
trd_status trd_square_count(int k, long n, char** out_decimal);

/* ------------------------------------------------------------------ */
/* Closed-form and multi-sum evaluators                                */
/* ------------------------------------------------------------------ */

/* name: t2 t4 t8 s2 s4 s8 */
trd_status trd_classical(const char* name, long n, char** out_decimal);

/* family: mt1 mt2 mt1a mt1b mt2a mt2b kw-even kw-odd gm gmo t16 t24 t42
 * m2-t4-d6 m2-t6-d4 m2-t8-d3 m2-t8-d2 m2-t12-d2.
 * n indexes the produced triangle count; x-indexed families evaluate at
 * x = step * n. Pass d = 1 for families without a free divisor. */
trd_status trd_eval_identity(const char* family, int m, int d, long n,
                             char** out_decimal);

/* ------------------------------------------------------------------ */
/* Numeric kernels                                                     */
/* ------------------------------------------------------------------ */

/* Pfaffian of a skew-symmetric matrix, entries interleaved re,im row-major.
 * dim <= 12; odd dimensions use the bordered convention. out = {re, im}. */
trd_status trd_pfaffian(const double* entries_re_im, int dim, double out[2]);

/* theta(x; q) truncated per the library's tail bound. out = {re, im}. */
trd_status trd_theta(double x_re, double x_im, double q_re, double q_im,
                     double tol, double out[2]);

/* ------------------------------------------------------------------ */
/* Report-producing runners (the CLI surfaces)                         */
/* ------------------------------------------------------------------ */

/* format: "json", "csv" or "plain" for all runners. */

trd_status trd_run_count(const char* method, int k, long n, int m, int d,
                         const char* format, char** out_report);

/* d = 0 sweeps every valid divisor. all_pass: 1 when every row passed. */
trd_status trd_run_verify(const char* family, int m_lo, int m_hi, int d,
                          long x_lo, long x_hi, int threads,
                          const char* format, char** out_report,
                          int* all_pass);

/* identity: fd fs ep op sp okp rains rains-dual modular el ol epxo opx.
 * flip = 1 negates the closed side of ep/op; the run then passes when the
 * identity is numerically broken. */
trd_status trd_run_fuzz(const char* identity, int trials, double q_re,
                        double q_im, unsigned long long seed, double tol,
                        int flip, const char* format, char** out_report,
                        int* all_pass);

/* method: "oracle", "classical" or "kw". */
trd_status trd_run_table(const int* ks, int n_ks, long n_max,
                         const char* method, const char* format,
                         char** out_report);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* TRIDENOM_H */
