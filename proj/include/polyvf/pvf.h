#ifndef POLYVF_PVF_H
#define POLYVF_PVF_H

#include <stddef.h>

#if defined(_WIN32)
#  if defined(PVF_BUILDING)
#    define PVF_API __declspec(dllexport)
#  else
#    define PVF_API __declspec(dllimport)
#  endif
#else
#  define PVF_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef struct pvf_poly pvf_poly;
typedef struct pvf_dataset pvf_dataset;
typedef struct pvf_classification pvf_classification;

/* Status codes; the first five double as CLI exit codes. */
typedef enum pvf_status {
  PVF_OK = 0,
  PVF_ERR_ARGUMENT = 1,
  PVF_ERR_INCONCLUSIVE = 2,
  PVF_ERR_INVALID_DATA_SET = 3,
  PVF_ERR_REALIZATION = 4,
  PVF_ERR_NUMERIC = 5,
  PVF_ERR_UNSUPPORTED = 6,
  PVF_ERR_INCONSISTENT = 7,
  PVF_ERR_INTERNAL = 8
} pvf_status;

typedef struct pvf_complex {
  double re, im;
} pvf_complex;

/* Zero means "derive automatically" for every field except rel_tol and max_steps. */
typedef struct pvf_trace_config {
  double start_radius;
  double escape_radius;
  double landing_radius_factor;
  double rel_tol;
  double max_time;
  long max_steps;
  int threads;
} pvf_trace_config;

typedef struct pvf_realize_options {
  int max_iter;
  int restarts;
  unsigned long long seed;
  double tol;
  int threads;
} pvf_realize_options;

PVF_API const char* pvf_version(void);
/* Message of the last failed call on this thread ("" if none). */
PVF_API const char* pvf_last_error(void);
PVF_API const char* pvf_status_string(pvf_status s);
/* Frees strings returned through char** out-parameters. */
PVF_API void pvf_string_free(char* s);

PVF_API void pvf_trace_config_default(pvf_trace_config* cfg);
PVF_API void pvf_realize_options_default(pvf_realize_options* opt);

/* Polynomials: ascending coefficients, n = degree + 1. create requires monic and centered input;
   the other constructors normalize by an affine change of variable when needed and report it. */
PVF_API pvf_status pvf_poly_create(const pvf_complex* coeffs, int n, pvf_poly** out);
PVF_API pvf_status pvf_poly_normalize(const pvf_complex* coeffs, int n, pvf_poly** out, pvf_complex* A,
                                      pvf_complex* B, int* changed);
PVF_API pvf_status pvf_poly_parse(const char* literals, pvf_poly** out, int* changed);
PVF_API pvf_status pvf_poly_from_json(const char* json, pvf_poly** out, int* changed);
PVF_API int pvf_poly_degree(const pvf_poly* p);
PVF_API pvf_status pvf_poly_coeffs(const pvf_poly* p, pvf_complex* out, int n);
PVF_API pvf_status pvf_poly_to_json(const pvf_poly* p, char** out);
PVF_API void pvf_poly_free(pvf_poly* p);

/* Combinatorial data sets; documents carrying one under "data_set" are accepted too. */
PVF_API pvf_status pvf_dataset_from_json(const char* json, pvf_dataset** out);
PVF_API pvf_status pvf_dataset_to_json(const pvf_dataset* ds, char** out);
PVF_API int pvf_dataset_degree(const pvf_dataset* ds);
/* Report JSON for a parsed data set; *valid receives 1 or 0. */
PVF_API pvf_status pvf_dataset_validate(const pvf_dataset* ds, char** report, int* valid);
/* Same from JSON text; label sets that are not partitions yield a report with valid = 0. */
PVF_API pvf_status pvf_validate_json(const char* json, char** report, int* valid);
PVF_API void pvf_dataset_free(pvf_dataset* ds);

/* Streams every valid data set of degree d (2..6) in canonical order as compact JSON. */
typedef void (*pvf_dataset_callback)(const char* canonical_json, void* user);
PVF_API pvf_status pvf_enumerate(int d, int structurally_stable_only, pvf_dataset_callback cb, void* user,
                                 long* count);

/* Classification: PVF_ERR_INCONCLUSIVE when a separatrix cannot be decided. */
PVF_API pvf_status pvf_classify(const pvf_poly* p, const pvf_trace_config* cfg, pvf_classification** out);
PVF_API pvf_status pvf_classification_to_json(const pvf_classification* c, char** out);
PVF_API int pvf_classification_checks_pass(const pvf_classification* c);
PVF_API pvf_status pvf_classification_dataset(const pvf_classification* c, pvf_dataset** out);
PVF_API void pvf_classification_free(pvf_classification* c);

/* Realization from problem JSON (data_set, alphas, taus). report may be NULL. */
PVF_API pvf_status pvf_realize_json(const char* problem_json, const pvf_realize_options* opt,
                                    const pvf_trace_config* cfg, pvf_poly** out, char** report);

/* SVG 1.1 documents. */
PVF_API pvf_status pvf_dataset_render_svg(const pvf_dataset* ds, int size, char** svg);
PVF_API pvf_status pvf_classification_render_svg(const pvf_classification* c, int size, char** svg);

#ifdef __cplusplus
}
#endif

#endif
