/* SPDX-License-Identifier: Apache-2.0
 * Copyright (c) 2026 the solvlin authors
 *
 * C interface to the solvlin shared library.
 *
 * All functions returning int use the slg_status codes below.  Functions
 * producing text allocate the result with malloc; release it with
 * slg_string_free.  On failure an optional caller-provided buffer receives a
 * human-readable diagnostic.  Handles are opaque and freed with their
 * dedicated destructor.  All operations are pure given their inputs; handles
 * are immutable after creation and safe to share between threads.
 */

#ifndef SOLVLIN_H
#define SOLVLIN_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  define SLG_API __declspec(dllexport)
#else
#  define SLG_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum slg_status {
  SLG_OK = 0,
  SLG_ERR_INVALID = 2,   /* invalid input (matches the CLI exit code) */
  SLG_ERR_INTERNAL = 3
} slg_status;

/* Opaque system handle: coefficients (a, b, alpha, beta) and control range. */
typedef struct slg_system slg_system;

SLG_API const char* slg_version(void);

/* Constructors.  err/err_len may be NULL/0. */
SLG_API int slg_system_create(double a, double b, double alpha, double beta,
                              double omega_lo, double omega_hi,
                              slg_system** out, char* err, size_t err_len);
SLG_API int slg_system_from_json(const char* json_text, slg_system** out,
                                 char* err, size_t err_len);
/* Copy of `sys` with a different control range. */
SLG_API int slg_system_with_omega(const slg_system* sys, double omega_lo,
                                  double omega_hi, slg_system** out,
                                  char* err, size_t err_len);
SLG_API void slg_system_free(slg_system* sys);

SLG_API int slg_system_params(const slg_system* sys, double* a, double* b,
                              double* alpha, double* beta,
                              double* omega_lo, double* omega_hi);

/* Control-set classification as a JSON document (case, geometry, invariance,
 * normal form, warnings). */
SLG_API int slg_classify_json(const slg_system* sys, char** out_json,
                              char* err, size_t err_len);

/* Closed-form simulation of a piecewise-constant control from (x, y).
 * dts/us are n parallel arrays; interior_samples sets the per-segment
 * sampling density (<= 0 means the default of 16); when with_rk4_audit is
 * nonzero the CSV carries x_rk4,y_rk4 columns from an independent RK4 run at
 * step rk4_step (<= 0 means 1e-3).  Invalid rows are reported by index. */
SLG_API int slg_simulate_csv(const slg_system* sys, double x, double y,
                             const double* dts, const double* us, size_t n,
                             int interior_samples, int with_rk4_audit,
                             double rk4_step, char** out_csv,
                             char* err, size_t err_len);

/* Steering search from (px,py) to (qx,qy); returns a JSON record with the
 * verdict, control and terminal error. */
SLG_API int slg_steer_json(const slg_system* sys, double px, double py,
                           double qx, double qy, double eps, long budget,
                           uint64_t seed, char** out_json,
                           char* err, size_t err_len);

/* Empirical verification of the classified control set.  viewport is
 * {x0,x1,y0,y1} or NULL for the default window.  threads <= 0 means hardware
 * concurrency (capped by SOLVLIN_THREADS).  *out_clean is set to 1 when no
 * violations were found. */
SLG_API int slg_verify_json(const slg_system* sys, int grid, double eps,
                            double horizon, uint64_t seed,
                            const double* viewport, int threads,
                            char** out_json, int* out_clean,
                            char* err, size_t err_len);

/* Deterministic SVG figure of the control set; sample_trajectories > 0
 * overlays that many seeded random trajectories. */
SLG_API int slg_plot_svg(const slg_system* sys, const double* viewport,
                         int width, int height, int sample_trajectories,
                         double horizon, uint64_t seed, char** out_svg,
                         char* err, size_t err_len);

SLG_API void slg_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif /* SOLVLIN_H */
