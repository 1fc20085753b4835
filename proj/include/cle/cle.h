/* C interface to the cle library. All functions return a cle_status; on failure
 * cle_last_error() gives a message valid until the next call on the same thread. */
#ifndef CLE_CLE_H
#define CLE_CLE_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define CLE_API __declspec(dllexport)
#else
#define CLE_API __attribute__((visibility("default")))
#endif

typedef enum cle_status {
    CLE_OK = 0,
    CLE_ERR_NULL = 1,      /* null handle or output pointer */
    CLE_ERR_ARGUMENT = 2,  /* argument outside the domain, bad JSON, unknown name */
    CLE_ERR_BRACKET = 3,   /* root bracketing failed */
    CLE_ERR_RESIDUE = 4,   /* residue coefficient cross-check failed */
    CLE_ERR_INVARIANT = 5, /* internal consistency check failed */
    CLE_ERR_BUFFER = 6,    /* caller buffer too small */
    CLE_ERR_INTERNAL = 7
} cle_status;

typedef enum cle_law { CLE_LAW_SSW = 0, CLE_LAW_TOUCH = 1, CLE_LAW_NONTOUCH = 2, CLE_LAW_WTD = 3 } cle_law;

typedef struct cle_context cle_context;
typedef struct cle_series cle_series;
typedef struct cle_sampler cle_sampler;
typedef struct cle_report cle_report;

CLE_API const char* cle_version(void);
CLE_API const char* cle_last_error(void);
CLE_API const char* cle_status_name(cle_status status);

/* kappa in (4, 8) */
CLE_API cle_status cle_context_create(double kappa, cle_context** out);
CLE_API void cle_context_destroy(cle_context* ctx);
CLE_API cle_status cle_context_params(const cle_context* ctx, double* kappa, double* gamma, double* stable_index);

CLE_API cle_status cle_touching_probability(const cle_context* ctx, double* out);
CLE_API cle_status cle_kappa0(double* out);
/* *is_infinite = 1 and *value = 0 when the moment diverges. */
CLE_API cle_status cle_moment(const cle_context* ctx, cle_law law, double lambda, double* value, int* is_infinite);
CLE_API cle_status cle_moment_threshold(const cle_context* ctx, cle_law law, double* out);
CLE_API cle_status cle_root_np(const cle_context* ctx, double a, double* out);
CLE_API cle_status cle_root_nl(const cle_context* ctx, double a, double* out);

CLE_API cle_status cle_series_build(const cle_context* ctx, cle_law law, int terms, cle_series** out);
CLE_API void cle_series_destroy(cle_series* series);
CLE_API cle_status cle_series_info(const cle_series* series, int* terms, double* mass, double* s_min);
/* Copies up to `capacity` poles and coefficients; CLE_ERR_BUFFER if capacity < terms. */
CLE_API cle_status cle_series_terms(const cle_series* series, double* poles, double* coefficients, size_t capacity);
/* density and ccdf may each be null. */
CLE_API cle_status cle_series_eval(const cle_series* series, const double* s, size_t n, double* density,
                                   double* ccdf);

CLE_API cle_status cle_sampler_create(const cle_series* series, int table_points, cle_sampler** out);
CLE_API void cle_sampler_destroy(cle_sampler* sampler);
CLE_API cle_status cle_sampler_draw(const cle_sampler* sampler, size_t n, uint64_t seed, double* out);

/* Named experiment with JSON parameters; see cle_experiment_name(). */
CLE_API cle_status cle_experiment_run(const char* name, const char* params_json, cle_report** out);
CLE_API size_t cle_experiment_count(void);
CLE_API const char* cle_experiment_name(size_t index);
CLE_API cle_status cle_acceptance_run(int criterion, int quick, uint64_t seed, unsigned threads, cle_report** out);

/* JSON text owned by the report. */
CLE_API const char* cle_report_json(const cle_report* report);
/* 1 all gates pass, 0 a gate failed, -1 no gates. */
CLE_API int cle_report_passed(const cle_report* report);
CLE_API void cle_report_destroy(cle_report* report);

#ifdef __cplusplus
}
#endif

#endif
