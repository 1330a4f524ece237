#ifndef SGN_WHITHAM_H
#define SGN_WHITHAM_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum SgnStatus {
  SGN_STATUS_OK = 0,
  SGN_STATUS_NULL_POINTER = 1,
  SGN_STATUS_INVALID_ARGUMENT = 2,
  SGN_STATUS_DEGENERATE = 3,
  SGN_STATUS_SOLVER_FAILURE = 4,
  SGN_STATUS_IO = 5,
  SGN_STATUS_BUFFER_TOO_SMALL = 6,
  SGN_STATUS_PANIC = 7,
} SgnStatus;

/**
 * An SGN solver owning its field.
 */
typedef struct SgnSolver SgnSolver;

/**
 * A cnoidal wave.
 */
typedef struct SgnWave SgnWave;

/**
 * Constants and averages of a cnoidal wave.
 */
typedef struct SgnWaveSummary {
  double wavelength;
  double phase_speed;
  double mean_velocity;
  double mass_flux;
  double i;
  double epsilon;
  double h_mean;
  double h_inv_mean;
  double k;
  double n;
} SgnWaveSummary;

/**
 * Characteristic speeds, sorted by real part.
 */
typedef struct SgnEigen {
  double re[4];
  double im[4];
  uint32_t n_positive;
  uint32_t n_negative;
  bool all_real;
  bool distinct;
  double resultant;
} SgnEigen;

typedef struct SgnDiagnostics {
  double mass;
  double momentum;
  double energy;
} SgnDiagnostics;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Copy the last error message of this thread into `buf` (NUL terminated).
 *
 * Returns the buffer size needed including the terminator; nothing is written
 * when `buf` is null or `len` is too small.
 *
 * # Safety
 * `buf` must be null or point to `len` writable bytes.
 */
size_t sgn_last_error_message(char *buf, size_t len);

/**
 * Wave with roots `h0 < h1 < h2` and zero mean velocity.
 *
 * # Safety
 * `out` must be a valid pointer to a `SgnWave*`.
 */
enum SgnStatus sgn_wave_new(double h0,
                            double h1,
                            double h2,
                            double g,
                            int sign,
                            struct SgnWave **out);

/**
 * Wave with an explicit phase speed `D`.
 *
 * # Safety
 * `out` must be a valid pointer to a `SgnWave*`.
 */
enum SgnStatus sgn_wave_new_with_phase_speed(double h0,
                                             double h1,
                                             double h2,
                                             double g,
                                             int sign,
                                             double phase_speed,
                                             struct SgnWave **out);

/**
 * # Safety
 * `wave` must be null or a handle from `sgn_wave_new*` not yet freed.
 */
void sgn_wave_free(struct SgnWave *wave);

/**
 * # Safety
 * `wave` must be a live handle and `out` a valid pointer.
 */
enum SgnStatus sgn_wave_summary(const struct SgnWave *wave, struct SgnWaveSummary *out);

/**
 * Depth and velocity at `len` moving-frame positions `xi`; crest at `xi = 0`.
 *
 * # Safety
 * `wave` must be a live handle; `xi`, `h`, `u` must each hold `len` doubles.
 */
enum SgnStatus sgn_wave_profile(const struct SgnWave *wave,
                                const double *xi,
                                double *h,
                                double *u,
                                size_t len);

/**
 * Characteristic speeds at mean velocity `mean_velocity`.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum SgnStatus sgn_eigen(double h0,
                         double h1,
                         double h2,
                         double g,
                         int sign,
                         double mean_velocity,
                         struct SgnEigen *out);

/**
 * Characteristic speeds at phase speed `phase_speed`.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum SgnStatus sgn_eigen_with_phase_speed(double h0,
                                          double h1,
                                          double h2,
                                          double g,
                                          int sign,
                                          double phase_speed,
                                          struct SgnEigen *out);

/**
 * Solver on a periodic grid of `len` cells with depth `h` and momentum `q`.
 *
 * # Safety
 * `h` and `q` must hold `len` doubles; `out` must be a valid pointer.
 */
enum SgnStatus sgn_solver_new(const double *h,
                              const double *q,
                              size_t len,
                              double dx,
                              double g,
                              double cfl,
                              struct SgnSolver **out);

/**
 * Solver initialised with a perturbed wave train at zero mean velocity.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum SgnStatus sgn_solver_new_wavetrain(double h0,
                                        double h1,
                                        double h2,
                                        double g,
                                        int sign,
                                        size_t n_waves,
                                        double amplitude,
                                        size_t cells_per_wavelength,
                                        double cfl,
                                        struct SgnSolver **out);

/**
 * # Safety
 * `solver` must be null or a handle from `sgn_solver_new*` not yet freed.
 */
void sgn_solver_free(struct SgnSolver *solver);

/**
 * One CFL-limited step; the step size goes to `dt` when it is not null.
 *
 * # Safety
 * `solver` must be a live handle; `dt` null or valid.
 */
enum SgnStatus sgn_solver_step(struct SgnSolver *solver, double *dt);

/**
 * Integrate up to time `t`, landing on it exactly.
 *
 * # Safety
 * `solver` must be a live handle.
 */
enum SgnStatus sgn_solver_advance_to(struct SgnSolver *solver, double t);

/**
 * Current time, or NaN for a null handle.
 *
 * # Safety
 * `solver` must be null or a live handle.
 */
double sgn_solver_time(const struct SgnSolver *solver);

/**
 * Number of cells, or 0 for a null handle.
 *
 * # Safety
 * `solver` must be null or a live handle.
 */
size_t sgn_solver_len(const struct SgnSolver *solver);

/**
 * Copy depth and momentum into caller buffers of `len` doubles.
 *
 * # Safety
 * `solver` must be a live handle; `h` and `q` must hold `len` doubles.
 */
enum SgnStatus sgn_solver_copy_fields(const struct SgnSolver *solver,
                                      double *h,
                                      double *q,
                                      size_t len);

/**
 * # Safety
 * `solver` must be a live handle and `out` a valid pointer.
 */
enum SgnStatus sgn_solver_diagnostics(const struct SgnSolver *solver, struct SgnDiagnostics *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SGN_WHITHAM_H */
