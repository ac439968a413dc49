/*
 * ncwave C API.
 *
 * Every function returns an ncw_status. On failure a description is
 * available from ncw_last_error() on the calling thread until the next
 * call into the library. Strings returned through char** out-parameters
 * are owned by the caller and released with ncw_string_free().
 */
#ifndef NCWAVE_NCWAVE_H
#define NCWAVE_NCWAVE_H

#include <stddef.h>

#if defined(_WIN32)
#  if defined(NCWAVE_BUILDING)
#    define NCW_API __declspec(dllexport)
#  else
#    define NCW_API __declspec(dllimport)
#  endif
#else
#  define NCW_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Values 2, 3 and 4 double as CLI exit codes. */
typedef enum ncw_status {
    NCW_OK = 0,
    NCW_ERR_INPUT = 2,      /* malformed scenario, unknown limit, bad path */
    NCW_ERR_DEGENERATE = 3, /* output dominated by poles */
    NCW_ERR_NUMERIC = 4,    /* stencil does not fit, singular matrix */
    NCW_ERR_ARGUMENT = 5,   /* null pointer or out-of-range argument */
    NCW_ERR_INTERNAL = 6
} ncw_status;

typedef struct ncw_scenario ncw_scenario;
typedef struct ncw_field ncw_field;

typedef struct ncw_residual_stats {
    double max_residual;
    double mean_residual;
    double hx;
    double ht;
    double convergence_order; /* NaN when the residual vanishes */
    int stencil_order;
    size_t points;
    size_t skipped;
} ncw_residual_stats;

NCW_API const char* ncw_last_error(void);
NCW_API const char* ncw_version(void);
NCW_API void ncw_string_free(char* s);

/* Scenarios */
NCW_API ncw_status ncw_scenario_load(const char* path, ncw_scenario** out);
NCW_API ncw_status ncw_scenario_parse(const char* text, ncw_scenario** out);
NCW_API ncw_status ncw_scenario_serialize(const ncw_scenario* s, char** text);
NCW_API ncw_status ncw_scenario_save(const ncw_scenario* s, const char* path);
/* limit is one of "nls", "hirota", "lpd", "mkdv". */
NCW_API ncw_status ncw_scenario_apply_limit(ncw_scenario* s, const char* limit);
NCW_API ncw_status ncw_scenario_params(const ncw_scenario* s, double* alpha1, double* alpha2,
                                       double* gamma);
NCW_API ncw_status ncw_scenario_mi(const ncw_scenario* s, double* c, double* k_max,
                                   size_t* samples);
NCW_API void ncw_scenario_free(ncw_scenario* s);

/* Solution at one point; re and im receive dim*dim row-major entries. */
NCW_API ncw_status ncw_scenario_dim(const ncw_scenario* s, size_t* dim);
NCW_API ncw_status ncw_solution_point(const ncw_scenario* s, double x, double t, double* re,
                                      double* im);
NCW_API ncw_status ncw_closed_form_point(double lambda_re, double lambda_im, double q1, double q2,
                                         double c1, double alpha1, double alpha2, double gamma,
                                         double x, double t, double* re, double* im);

/* Fields. threads = 0 honours NCWAVE_THREADS. */
NCW_API ncw_status ncw_field_generate(const ncw_scenario* s, size_t threads, ncw_field** out);
NCW_API ncw_status ncw_field_info(const ncw_field* f, size_t* nx, size_t* nt, size_t* dim,
                                  size_t* poles);
NCW_API ncw_status ncw_field_value(const ncw_field* f, size_t it, size_t ix, size_t row,
                                   size_t col, double* re, double* im, int* valid);
NCW_API ncw_status ncw_field_write_csv(const ncw_field* f, const char* path);
NCW_API void ncw_field_free(ncw_field* f);

/* Residuals of the equation of motion; stencil_order is 2, 4 or 6. */
NCW_API ncw_status ncw_verify(const ncw_field* f, const ncw_scenario* s, int stencil_order,
                              ncw_residual_stats* out);
NCW_API ncw_status ncw_verify_json(const ncw_field* f, const ncw_scenario* s, int stencil_order,
                                   char** json);
/* Residual of the separately transcribed reduced equation. */
NCW_API ncw_status ncw_verify_reduced(const ncw_field* f, const ncw_scenario* s,
                                      const char* limit, int stencil_order,
                                      ncw_residual_stats* out);

/* Modulation instability */
NCW_API ncw_status ncw_mi_growth(double k, double c, double alpha1, double alpha2, double gamma,
                                 double* numeric, double* closed_re, double* closed_im);
NCW_API ncw_status ncw_mi_sweep(double c, double alpha1, double alpha2, double gamma,
                                double k_max, size_t samples, const char* csv_path,
                                char** bands_json);

#ifdef __cplusplus
}
#endif

#endif /* NCWAVE_NCWAVE_H */
