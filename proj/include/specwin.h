/* specwin — successive-rescaling pseudospectral solver, C API.
 *
 * The shared library exposes the run/analyze pipeline through opaque
 * handles and status codes; every function returns SPECWIN_OK on success.
 * specwin_last_error() describes the most recent failure on the calling
 * thread. Handles must be released with the matching _free function.
 */

#ifndef SPECWIN_H
#define SPECWIN_H

#include <stddef.h>

#if defined(_WIN32)
#define SPECWIN_API __declspec(dllexport)
#else
#define SPECWIN_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum specwin_status {
    SPECWIN_OK = 0,
    SPECWIN_ERR_INVALID_ARG = 1,
    SPECWIN_ERR_CONFIG = 2,
    SPECWIN_ERR_NUMERICAL = 3,
    SPECWIN_ERR_IO = 4,
    SPECWIN_ERR_MISSING_DATA = 5,
    SPECWIN_ERR_INTERNAL = 6
} specwin_status;

typedef struct specwin_config specwin_config;
typedef struct specwin_result specwin_result;

SPECWIN_API unsigned specwin_abi_version(void);
SPECWIN_API const char* specwin_version_string(void);
SPECWIN_API const char* specwin_status_name(specwin_status status);
SPECWIN_API const char* specwin_last_error(void);

/* -- configuration ------------------------------------------------------- */

/* Named presets: burgers_calibration, euler_tg_32, euler_eps_1e-3,
 * euler_eps_1e-5. */
SPECWIN_API specwin_status specwin_config_preset(const char* name, specwin_config** out);
SPECWIN_API specwin_status specwin_config_load(const char* path, specwin_config** out);
SPECWIN_API specwin_status specwin_config_parse(const char* text, specwin_config** out);
/* Keys are section-qualified, e.g. "run.epsilon", "integrator.dt_init". */
SPECWIN_API specwin_status specwin_config_set(specwin_config* cfg, const char* key,
                                              const char* value);
SPECWIN_API specwin_status specwin_config_get(const specwin_config* cfg, const char* key,
                                              char* buf, size_t buflen);
SPECWIN_API specwin_status specwin_config_validate(const specwin_config* cfg);
SPECWIN_API void specwin_config_free(specwin_config* cfg);

/* -- execution ------------------------------------------------------------ */

/* Runs the cascade; writes checkpoints, diagnostics tables, summary.json and
 * manifest.txt under out_dir. Returns SPECWIN_ERR_NUMERICAL when the solver
 * failed mid-run (partial outputs and an incomplete manifest remain). */
SPECWIN_API specwin_status specwin_run(const specwin_config* cfg, const char* out_dir,
                                       specwin_result** out);

/* Recomputes all diagnostics from stored checkpoints. options may be NULL or
 * a semicolon-separated list: "fit_range=RMIN:RMAX;exclude_cycle0=true|false;
 * out=DIR". */
SPECWIN_API specwin_status specwin_analyze(const char* manifest_path, const char* options,
                                           specwin_result** out);

/* -- result queries -------------------------------------------------------- */

SPECWIN_API specwin_status specwin_result_total_time(const specwin_result* r, double* out);
SPECWIN_API specwin_status specwin_result_estimated_blowup_time(const specwin_result* r,
                                                                double* out);
SPECWIN_API specwin_status specwin_result_cycle_count(const specwin_result* r, int* out);
SPECWIN_API specwin_status specwin_result_bkm_integral(const specwin_result* r, double* out);
SPECWIN_API specwin_status specwin_result_blowup_exponent(const specwin_result* r, double* zeta,
                                                          double* zeta_stderr);
/* flavor: "scalar", "longitudinal" or "transverse". */
SPECWIN_API specwin_status specwin_result_fit_slope(const specwin_result* r, int order,
                                                    const char* flavor, double* slope,
                                                    double* slope_stderr);
SPECWIN_API specwin_status specwin_result_fit_sign(const specwin_result* r, int order,
                                                   const char* flavor, int* sign);
SPECWIN_API specwin_status specwin_result_manifest_path(const specwin_result* r, char* buf,
                                                        size_t buflen);
SPECWIN_API void specwin_result_free(specwin_result* r);

#ifdef __cplusplus
}
#endif

#endif /* SPECWIN_H */
