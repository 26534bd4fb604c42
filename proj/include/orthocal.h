/*
 * C interface to the Orthoglide joint-offset calibration library.
 *
 * Objects are opaque handles created and released by the library. Every
 * function that can fail returns an orthocal_status; the message of the most
 * recent failure on the calling thread is available from orthocal_last_error().
 * Vectors are passed as (x, y, z) triples in millimetres, matrices row-major.
 */
#ifndef ORTHOCAL_H
#define ORTHOCAL_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(ORTHOCAL_BUILDING)
#    define ORTHOCAL_API __declspec(dllexport)
#  else
#    define ORTHOCAL_API __declspec(dllimport)
#  endif
#else
#  define ORTHOCAL_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum orthocal_status {
  ORTHOCAL_OK = 0,
  ORTHOCAL_ERR_INVALID_ARGUMENT = 1,
  ORTHOCAL_ERR_CONFIG = 2,
  ORTHOCAL_ERR_PARSE = 3,
  ORTHOCAL_ERR_IO = 4,
  ORTHOCAL_ERR_UNREACHABLE_POINT = 10,
  ORTHOCAL_ERR_SINGULAR_JOINT = 11,
  ORTHOCAL_ERR_NO_REAL_SOLUTION = 12,
  ORTHOCAL_ERR_SINGULAR_POSTURE = 13,
  ORTHOCAL_ERR_DEGENERATE_LEG = 14,
  ORTHOCAL_ERR_STATION_OUT_OF_RANGE = 15,
  ORTHOCAL_ERR_RANK_DEFICIENT = 16,
  ORTHOCAL_ERR_EMPTY_VECTOR = 17,
  ORTHOCAL_ERR_BUFFER_TOO_SMALL = 20,
  ORTHOCAL_ERR_INTERNAL = 99
} orthocal_status;

typedef enum orthocal_form {
  ORTHOCAL_FORM_AUTO = -1, /* identify only: take the form from the file header */
  ORTHOCAL_FORM_FULL = 0,
  ORTHOCAL_FORM_REDUCED = 1
} orthocal_form;

typedef struct orthocal_config orthocal_config;
typedef struct orthocal_report orthocal_report;

ORTHOCAL_API const char* orthocal_version(void);

/* Message of the last failure on this thread; empty string if none. */
ORTHOCAL_API const char* orthocal_last_error(void);

ORTHOCAL_API const char* orthocal_status_name(orthocal_status status);

/* Process exit status for a result: 0 success, 2 parse/config error,
 * 3 numerical failure (rank deficiency, unreachable or singular posture). */
ORTHOCAL_API int orthocal_exit_code(orthocal_status status);

/* ---- configuration ---------------------------------------------------- */

ORTHOCAL_API orthocal_status orthocal_config_create(orthocal_config** out);
ORTHOCAL_API orthocal_status orthocal_config_load(const char* path, orthocal_config** out);
/* Same keys as the config file; unknown keys fail with ORTHOCAL_ERR_CONFIG. */
ORTHOCAL_API orthocal_status orthocal_config_set(orthocal_config* config, const char* key,
                                                 const char* value);
ORTHOCAL_API orthocal_status orthocal_config_validate(const orthocal_config* config);
/* Posture angles in effect: override when set, else derived from the geometry. */
ORTHOCAL_API orthocal_status orthocal_config_angles(const orthocal_config* config,
                                                    double* alpha_max, double* alpha_min);
ORTHOCAL_API orthocal_status orthocal_config_get_int(const orthocal_config* config,
                                                     const char* key, int64_t* value);
ORTHOCAL_API orthocal_status orthocal_config_get_double(const orthocal_config* config,
                                                        const char* key, double* value);
/* Returns a pointer owned by the config, valid until the next set/free. */
ORTHOCAL_API orthocal_status orthocal_config_get_string(const orthocal_config* config,
                                                        const char* key, const char** value);
ORTHOCAL_API void orthocal_config_free(orthocal_config* config);

/* ---- kinematics --------------------------------------------------------- */

ORTHOCAL_API orthocal_status orthocal_closure_residual(const double p[3],
                                                       const double actual_joints[3],
                                                       double leg_length, double out[3]);
ORTHOCAL_API orthocal_status orthocal_inverse_kinematics(const double p[3],
                                                         const double offsets[3],
                                                         const int branch[3], double leg_length,
                                                         double joints_out[3]);
ORTHOCAL_API orthocal_status orthocal_direct_kinematics(const double joints[3],
                                                        const double offsets[3],
                                                        double leg_length, double p_out[3]);
ORTHOCAL_API orthocal_status orthocal_inverse_jacobian(const double p[3],
                                                       const double actual_joints[3],
                                                       double leg_length, double out[9]);
ORTHOCAL_API orthocal_status orthocal_jacobian(const double p[3], const double actual_joints[3],
                                               double leg_length, double out[9]);

/* ---- identification ----------------------------------------------------- */

/* Writes rows*3 coefficients; capacity is in doubles (36 for full, 18 for reduced). */
ORTHOCAL_API orthocal_status orthocal_design_matrix(orthocal_form form, double alpha_max,
                                                    double alpha_min, double* out,
                                                    size_t capacity, size_t* rows);
ORTHOCAL_API orthocal_status orthocal_solve(const double* matrix, size_t rows,
                                            const double* measurements,
                                            orthocal_report** out);
ORTHOCAL_API orthocal_status orthocal_rms(const double* values, size_t count, double* out);

/* ---- commands ----------------------------------------------------------- */

/* Runs the virtual measurement protocol and writes the measurement CSV. */
ORTHOCAL_API orthocal_status orthocal_simulate(const orthocal_config* config,
                                               orthocal_form form, const char* out_path);
ORTHOCAL_API orthocal_status orthocal_identify_file(const orthocal_config* config,
                                                    const char* in_path, orthocal_form form,
                                                    orthocal_report** out);
ORTHOCAL_API orthocal_status orthocal_table1(const orthocal_config* config, double tolerance,
                                             orthocal_report** out);
/* csv_path may be NULL to skip the per-trial file. */
ORTHOCAL_API orthocal_status orthocal_montecarlo(const orthocal_config* config, int trials,
                                                 orthocal_form form, const char* csv_path,
                                                 orthocal_report** out);
ORTHOCAL_API orthocal_status orthocal_selftest(orthocal_report** out);

/* ---- reports ------------------------------------------------------------ */

ORTHOCAL_API const char* orthocal_report_text(const orthocal_report* report);
ORTHOCAL_API const char* orthocal_report_json(const orthocal_report* report);
/* 1 when every comparison in the report passed. */
ORTHOCAL_API int orthocal_report_passed(const orthocal_report* report);
ORTHOCAL_API orthocal_status orthocal_report_write(const orthocal_report* report,
                                                   const char* path);
/* Calibration accessors; ORTHOCAL_ERR_INVALID_ARGUMENT for reports without a fit. */
ORTHOCAL_API orthocal_status orthocal_report_offsets(const orthocal_report* report,
                                                     double out[3]);
ORTHOCAL_API orthocal_status orthocal_report_residuals(const orthocal_report* report,
                                                       double* out, size_t capacity,
                                                       size_t* count);
ORTHOCAL_API orthocal_status orthocal_report_sigma_hat(const orthocal_report* report,
                                                       double* out);
ORTHOCAL_API orthocal_status orthocal_report_rms(const orthocal_report* report,
                                                 double* before, double* after_predicted);
ORTHOCAL_API void orthocal_report_free(orthocal_report* report);

#ifdef __cplusplus
}
#endif

#endif /* ORTHOCAL_H */
