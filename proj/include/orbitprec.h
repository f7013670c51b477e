/* Copyright 2026 The orbitprec Authors
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

/* C interface of the orbitprec shared library.
 *
 * All handles are opaque; every function that can fail returns an OPX_ERR_*
 * code (0 on success) and leaves a human-readable detail string in the
 * calling thread's opx_last_error() buffer. Rational parameters (mu, x0,
 * shift, grid bounds) are passed as strings, either decimal ("3.75",
 * "0.005") or fractions ("22/100"), and are held exactly.
 */

#ifndef ORBITPREC_H
#define ORBITPREC_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define OPX_API __declspec(dllexport)
#else
#define OPX_API __attribute__((visibility("default")))
#endif

/* error codes */
enum {
    OPX_OK = 0,
    OPX_ERR_INVALID_ARGUMENT = 1,
    OPX_ERR_PARSE = 2,
    OPX_ERR_DOMAIN = 3,
    OPX_ERR_PRECONDITION = 4,
    OPX_ERR_RANGE = 5,
    OPX_ERR_NOMEM = 6,
    OPX_ERR_INTERNAL = 7
};

/* orbit outcomes (opx_result_status) */
enum {
    OPX_RUN_SUCCESS = 0,
    OPX_RUN_PRECISION_FAIL = 1,
    OPX_RUN_DOMAIN_FAIL = 2,
    OPX_RUN_CAP_EXCEEDED = 3
};

enum { OPX_TOL_RELATIVE = 0, OPX_TOL_ABSOLUTE = 1 };
enum { OPX_SEARCH_INCREMENT = 0, OPX_SEARCH_BRACKET = 1 };

typedef struct opx_system opx_system;
typedef struct opx_result opx_result;

OPX_API const char* opx_version(void);
OPX_API const char* opx_strerror(int code);
OPX_API const char* opx_last_error(void); /* thread-local detail of the last failure */

/* form: "form1" | "form2" | "form3" | "mean-value" | "running-error" */
OPX_API int opx_system_create(const char* mu, const char* form, opx_system** out);
/* conjugated copy on the shifted domain [shift, 1+shift] */
OPX_API int opx_system_shift(const opx_system* sys, const char* offset, opx_system** out);
OPX_API void opx_system_destroy(opx_system* sys);

/* One validated orbit run at fixed working precision. */
OPX_API int opx_run_fixed(const opx_system* sys, const char* x0, long steps, int p,
                          long precision, int tolerance_mode, opx_result** out);
/* Minimal-precision search; the result holds the verified run at m_min. */
OPX_API int opx_find_min_precision(const opx_system* sys, const char* x0, long steps, int p,
                                   int search_mode, long precision_cap, int tolerance_mode,
                                   opx_result** out);
OPX_API void opx_result_destroy(opx_result* r);

OPX_API int opx_result_status(const opx_result* r);
OPX_API long opx_result_fail_step(const opx_result* r);     /* -1 when none */
OPX_API long opx_result_precision(const opx_result* r);     /* precision of the stored run */
OPX_API long opx_result_min_precision(const opx_result* r); /* -1 when unavailable */
OPX_API double opx_result_sigma_est(const opx_result* r);   /* NaN when unavailable */
OPX_API double opx_result_wall_seconds(const opx_result* r);
OPX_API long opx_result_point_count(const opx_result* r);
/* Decimal rendering of orbit point `index` (value resp. error bound) with
 * the given significant digits. Returns the string length that would be
 * written (snprintf convention) or a negative OPX_ERR_* code. */
OPX_API long opx_result_point_value(const opx_result* r, long index, int digits, char* buf,
                                    size_t cap);
OPX_API long opx_result_point_error(const opx_result* r, long index, int digits, char* buf,
                                    size_t cap);

/* Birkhoff average of log|f'| over a validated orbit (transient discarded).
 * `flagged` is set when samples hit the derivative underflow guard or the
 * orbit could not be validated to 10^-3 relative accuracy. */
OPX_API int opx_lyapunov(const opx_system* sys, const char* x0, long samples, long transient,
                         double* lambda, double* half_width, int* flagged);

/* Analytic loss-of-significance band for a form; lambda_hat may be NULL for
 * the natural interval forms and is required for mean-value/running-error. */
OPX_API int opx_sigma_band(const char* mu, const char* form, const double* lambda_hat,
                           double* lower, double* upper);

/* Grid of integer multiples of `step` inside [start, end]. Values are
 * written as exact "num/den" strings. */
OPX_API int opx_grid_count(const char* start, const char* end, const char* step, long* out_count);
OPX_API long opx_grid_value(const char* start, const char* end, const char* step, long index,
                            char* buf, size_t cap);

/* Deterministic decimal rendering of a rational string. Returns the string
 * length (snprintf convention) or a negative OPX_ERR_* code. */
OPX_API long opx_format_decimal(const char* rational, int significant_digits, char* buf,
                                size_t cap);

#ifdef __cplusplus
}
#endif

#endif /* ORBITPREC_H */
