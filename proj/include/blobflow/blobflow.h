// Copyright 2026 The blobflow Authors
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
 * C interface to the blobflow solver library.
 *
 * Every object is an opaque handle created by a *_create / *_run style
 * function and released by the matching *_destroy. Functions return a
 * blobflow_status; on failure blobflow_last_error() describes the problem
 * (thread-local, valid until the next call on the same thread).
 */
#ifndef BLOBFLOW_BLOBFLOW_H
#define BLOBFLOW_BLOBFLOW_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(BLOBFLOW_BUILDING_LIBRARY)
#    define BLOBFLOW_API __declspec(dllexport)
#  else
#    define BLOBFLOW_API __declspec(dllimport)
#  endif
#elif defined(__GNUC__) || defined(__clang__)
#  define BLOBFLOW_API __attribute__((visibility("default")))
#else
#  define BLOBFLOW_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum blobflow_status {
  BLOBFLOW_OK = 0,
  BLOBFLOW_ERR_VERIFY = 1,     /* a verification criterion failed */
  BLOBFLOW_ERR_CONFIG = 2,     /* invalid parameters or unparsable input */
  BLOBFLOW_ERR_SOLVER = 3,     /* negative or non-finite state during a run */
  BLOBFLOW_ERR_RESOLUTION = 4, /* dx larger than the smallest epsilon */
  BLOBFLOW_ERR_METRIC = 5,     /* mass mismatch or zero mass in W2 */
  BLOBFLOW_ERR_IO = 6,         /* file could not be read, parsed or written */
  BLOBFLOW_ERR_ARGUMENT = 7,   /* NULL handle or out-of-range index */
  BLOBFLOW_ERR_INTERNAL = 8
} blobflow_status;

typedef enum blobflow_bc { BLOBFLOW_BC_NOFLUX = 0, BLOBFLOW_BC_PERIODIC = 1 } blobflow_bc;

typedef enum blobflow_convolution {
  BLOBFLOW_CONV_FASTSCAN = 0,
  BLOBFLOW_CONV_DENSE = 1
} blobflow_convolution;

typedef struct blobflow_grid blobflow_grid;
typedef struct blobflow_density blobflow_density;
typedef struct blobflow_run blobflow_run;
typedef struct blobflow_report blobflow_report;

/* Model definition. `local` != 0 selects the local porous-medium pressure and
 * ignores `epsilon`. */
typedef struct blobflow_model {
  double epsilon;
  int local;
  int drift;
  blobflow_bc bc;
  int order;
  double theta;
  blobflow_convolution convolution;
} blobflow_model;

/* Time controls. `adaptive` != 0 uses `cfl`, otherwise fixed nominal steps
 * of `dt`. `snapshot_times` may be NULL, meaning {0, t_end}. */
typedef struct blobflow_time_controls {
  int adaptive;
  double dt;
  double cfl;
  double t_end;
  const double* snapshot_times;
  size_t snapshot_count;
} blobflow_time_controls;

typedef struct blobflow_diagnostics {
  double time;
  double mass;
  double linf;
  double energy_local;
  double energy_nonlocal;
  double entropy;
  double second_moment;
  double energy_gap;
} blobflow_diagnostics;

typedef struct blobflow_sweep {
  const double* epsilons;
  size_t epsilon_count;
  double fit_lo;
  double fit_hi;
  int allow_underresolved;
  int jobs; /* 0: automatic */
} blobflow_sweep;

typedef struct blobflow_slope {
  double time;
  double slope; /* NaN when no fit is possible at this time */
  double intercept;
  double r_squared;
} blobflow_slope;

/* Called once per verification criterion. */
typedef void (*blobflow_verify_callback)(const char* name, int passed, const char* detail,
                                         void* user);

BLOBFLOW_API const char* blobflow_version(void);
BLOBFLOW_API const char* blobflow_last_error(void);

/* Defaults: local pressure, no drift, no-flux, order 2, theta 1.5, fast scan;
 * fixed dt 0.01, cfl 0.4, t_end 1. */
BLOBFLOW_API void blobflow_model_defaults(blobflow_model* model);
BLOBFLOW_API void blobflow_time_controls_defaults(blobflow_time_controls* controls);

BLOBFLOW_API blobflow_status blobflow_grid_create(double r1, double r2, int cells,
                                                  blobflow_grid** out);
BLOBFLOW_API void blobflow_grid_destroy(blobflow_grid* grid);
BLOBFLOW_API blobflow_status blobflow_grid_info(const blobflow_grid* grid, double* r1,
                                                double* r2, int* cells, double* dx);

/* Datum syntax: gauss | gauss:MEAN:SIGMA | parabola | uniform+C |
 * random:SEED | file:PATH. */
BLOBFLOW_API blobflow_status blobflow_density_sample(const blobflow_grid* grid, const char* datum,
                                                     blobflow_density** out);
BLOBFLOW_API blobflow_status blobflow_density_from_values(const blobflow_grid* grid,
                                                          const double* values, size_t count,
                                                          blobflow_density** out);
/* Reads a snapshot CSV; `time` may be NULL. */
BLOBFLOW_API blobflow_status blobflow_density_read(const char* path, blobflow_density** out,
                                                   double* time);
BLOBFLOW_API blobflow_status blobflow_density_write(const blobflow_density* density, double time,
                                                    const char* path);
BLOBFLOW_API void blobflow_density_destroy(blobflow_density* density);
BLOBFLOW_API size_t blobflow_density_size(const blobflow_density* density);
/* Borrowed pointer, valid while the handle lives. */
BLOBFLOW_API const double* blobflow_density_values(const blobflow_density* density);
BLOBFLOW_API blobflow_status blobflow_density_mass(const blobflow_density* density, double* out);

BLOBFLOW_API blobflow_status blobflow_w2(const blobflow_density* a, const blobflow_density* b,
                                         double* out);

/* Writes the N x N interaction matrix as CSV (N <= 64). */
BLOBFLOW_API blobflow_status blobflow_kernel_matrix_write(const blobflow_grid* grid,
                                                          double epsilon, blobflow_bc bc,
                                                          const char* path);

BLOBFLOW_API blobflow_status blobflow_simulate(const blobflow_grid* grid, const char* datum,
                                               const blobflow_model* model,
                                               const blobflow_time_controls* controls,
                                               blobflow_run** out);
BLOBFLOW_API void blobflow_run_destroy(blobflow_run* run);
BLOBFLOW_API size_t blobflow_run_snapshot_count(const blobflow_run* run);
/* Returns a new density handle owned by the caller. */
BLOBFLOW_API blobflow_status blobflow_run_snapshot(const blobflow_run* run, size_t index,
                                                   double* time, blobflow_density** out);
BLOBFLOW_API blobflow_status blobflow_run_diagnostics(const blobflow_run* run, size_t index,
                                                      blobflow_diagnostics* out);
/* Writes snapshot_<k>.csv files, diagnostics.csv and manifest.json into an
 * existing directory. */
BLOBFLOW_API blobflow_status blobflow_run_write(const blobflow_run* run, const char* directory);
/* After a BLOBFLOW_ERR_SOLVER from blobflow_simulate on this thread, writes
 * the last accepted state as a snapshot CSV. */
BLOBFLOW_API blobflow_status blobflow_write_failure_state(const char* path);

/* Replays a manifest written by blobflow_run_write. */
BLOBFLOW_API blobflow_status blobflow_simulate_manifest(const char* manifest_path,
                                                        blobflow_run** out);

BLOBFLOW_API blobflow_status blobflow_sweep_run(const blobflow_grid* grid, const char* datum,
                                                const blobflow_model* base,
                                                const blobflow_time_controls* controls,
                                                const blobflow_sweep* sweep,
                                                blobflow_report** out);
BLOBFLOW_API void blobflow_report_destroy(blobflow_report* report);
BLOBFLOW_API size_t blobflow_report_slope_count(const blobflow_report* report);
BLOBFLOW_API blobflow_status blobflow_report_slope(const blobflow_report* report, size_t index,
                                                   blobflow_slope* out);
BLOBFLOW_API size_t blobflow_report_warning_count(const blobflow_report* report);
BLOBFLOW_API const char* blobflow_report_warning(const blobflow_report* report, size_t index);
/* Writes report.csv, fit.csv, plot.dat and manifest.json into an existing
 * directory. */
BLOBFLOW_API blobflow_status blobflow_report_write(const blobflow_report* report,
                                                   const char* directory);

/* Runs the built-in verification suite. Returns BLOBFLOW_OK when every
 * criterion passes, BLOBFLOW_ERR_VERIFY otherwise. `callback` may be NULL. */
BLOBFLOW_API blobflow_status blobflow_verify(blobflow_verify_callback callback, void* user);

#ifdef __cplusplus
}
#endif

#endif /* BLOBFLOW_BLOBFLOW_H */
