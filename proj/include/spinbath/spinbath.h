#ifndef SPINBATH_SPINBATH_H
#define SPINBATH_SPINBATH_H

#include <stddef.h>
#include <stdint.h>

#if defined(SPINBATH_BUILDING_LIBRARY)
#define SB_API __attribute__((visibility("default")))
#else
#define SB_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum sb_status {
  SB_OK = 0,
  SB_ERR_INVALID_ARGUMENT = 1,
  SB_ERR_INVALID_STATE = 2,
  SB_ERR_DOMAIN = 3,
  SB_ERR_UNSUPPORTED = 4,
  SB_ERR_TOLERANCE = 5,
  SB_ERR_IO = 6,
  SB_ERR_INTERNAL = 7
} sb_status;

/* Model constants. n_bath = 0 selects the N -> infinity limit. */
typedef struct sb_params {
  double mu;
  double gamma;
  double alpha;
  double g;
  double delta;
  double beta;
  int n_bath;
} sb_params;

typedef struct sb_bloch {
  double l1;
  double l2;
  double l3;
} sb_bloch;

typedef struct sb_quad_spec {
  int hermite_order;
  int laguerre_order;
  double abs_tol;
  int max_refine;
} sb_quad_spec;

typedef struct sb_mc_spec {
  int64_t samples;
  uint64_t seed;
  int batch;
} sb_mc_spec;

typedef struct sb_kernel_check {
  const char* name; /* static storage */
  double value_re;
  double value_im;
  double reference_re;
  double reference_im;
  double relative_error;
  int target_digits;
  int passed;
} sb_kernel_check;

typedef struct sb_model sb_model;
typedef struct sb_trajectory sb_trajectory;

/* Message of the last failed call on this thread; "" if none. */
SB_API const char* sb_last_error(void);
SB_API const char* sb_version(void);

SB_API void sb_params_default(sb_params* p);
SB_API void sb_quad_spec_default(sb_quad_spec* q);
SB_API void sb_mc_spec_default(sb_mc_spec* s);

/* Checks the invariants of p. For n_bath = 0 the limit must also converge
   (g*beta > -2 and g*beta*delta > -2), else SB_ERR_DOMAIN. */
SB_API sb_status sb_params_validate(const sb_params* p);

/* 0 restores the default (SPINBATH_THREADS, then hardware concurrency). */
SB_API sb_status sb_set_threads(size_t n);

SB_API sb_status sb_model_create(const sb_params* p, sb_model** out);
SB_API void sb_model_destroy(sb_model* model);

/* 2^-N Z_N for a finite model. */
SB_API sb_status sb_model_scaled_partition(const sb_model* model, double* out);
/* Zbar = 2 sqrt 2 / ((2 + g beta) sqrt(2 + g beta delta)). */
SB_API sb_status sb_model_zbar(const sb_model* model, double* out);
/* Gaussian decoherence time in the units of 1/alpha of the parameters. */
SB_API sb_status sb_model_decoherence_time(const sb_model* model, double* out);
/* Columns j,m,log_nu,e_bath; finite models only. */
SB_API sb_status sb_model_write_sector_csv(const sb_model* model, const char* path);

/* Trajectories. times must be sorted and >= 0 (physical units). quad and
   mc may be NULL for defaults. The caller owns *out. */
SB_API sb_status sb_model_run_finite(const sb_model* model, const sb_bloch* b0,
                                     const double* times, size_t count, sb_trajectory** out);
SB_API sb_status sb_model_run_infinite(const sb_model* model, const sb_bloch* b0,
                                       const double* times, size_t count,
                                       const sb_quad_spec* quad, int emit_eta,
                                       sb_trajectory** out);
SB_API sb_status sb_model_run_dense(const sb_model* model, const sb_bloch* b0,
                                    const double* times, size_t count, sb_trajectory** out);
SB_API sb_status sb_model_run_mc(const sb_model* model, const sb_bloch* b0, const double* times,
                                 size_t count, const sb_mc_spec* mc, int emit_eta,
                                 sb_trajectory** out);

SB_API void sb_trajectory_destroy(sb_trajectory* traj);
SB_API size_t sb_trajectory_size(const sb_trajectory* traj);
SB_API sb_status sb_trajectory_point(const sb_trajectory* traj, size_t i, double* t,
                                     sb_bloch* bloch, double* purity);
SB_API int sb_trajectory_has_eta(const sb_trajectory* traj);
SB_API sb_status sb_trajectory_eta(const sb_trajectory* traj, size_t i, double* eta);
/* Header t,lambda1,lambda2,lambda3,purity[,eta][,source]; source may be NULL. */
SB_API sb_status sb_trajectory_write_csv(const sb_trajectory* traj, const char* path,
                                         const char* source);

SB_API size_t sb_selftest_count(void);
SB_API sb_status sb_selftest_entry(size_t i, sb_kernel_check* out);

#ifdef __cplusplus
}
#endif

#endif /* SPINBATH_SPINBATH_H */
