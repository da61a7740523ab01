#ifndef MCZ_CAPI_H
#define MCZ_CAPI_H

/* C interface to the mcz laboratory.  All functions return a status code:
 *   0   pass / success
 *   2   assertion failure (the report is still produced)
 *   3   precondition skip
 *   < 0 errors (bad arguments, I/O, internal)
 * Accessors that return a value directly use negative values or 0 to signal
 * errors as documented.  String outputs are heap-allocated and released with
 * mcz_string_free; grid handles with mcz_grid_free.
 */

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

enum {
  MCZ_OK = 0,
  MCZ_FAIL = 2,
  MCZ_SKIP = 3,
  MCZ_ERR_ARGUMENT = -1,
  MCZ_ERR_IO = -2,
  MCZ_ERR_INTERNAL = -3
};

/* Message for the last error on the calling thread; "" if none. */
const char* mcz_last_error(void);

const char* mcz_version(void);

void mcz_string_free(char* s);

/* JSON array of {"id", "claim", "summary"} for every registered experiment. */
int mcz_experiments_json(char** out);

/* Run one experiment and render its report.
 * config_json: NULL or a JSON object; recognized keys are the config fields
 *   (seed, levels, family_size, halfwidth, dilation, drift_tolerance, tol,
 *   operator_spec, b_spec, f_spec, weight_powers).  An "experiment" key, if
 *   present, must match the id argument.  Unknown keys are rejected.
 * format: "json" or "csv".
 * Returns MCZ_OK / MCZ_FAIL / MCZ_SKIP according to the verdict. */
int mcz_check(const char* experiment, const char* config_json, const char* format,
              char** out_report);

/* JSON array of {"descriptor", "aux"} for the first count members of a
 * corpus kind. */
int mcz_corpus_json(const char* kind, uint64_t seed, int count, char** out);

/* ---- grid functions as opaque handles ---- */

typedef struct mcz_grid mcz_grid;

int mcz_grid_create(int dim, double halfwidth, int levels, mcz_grid** out);
int mcz_grid_read(const char* path, mcz_grid** out);
/* encoding: "csv" or "raw". */
int mcz_grid_write(const mcz_grid* g, const char* path, const char* encoding);
/* Negative on a null handle. */
int mcz_grid_dim(const mcz_grid* g);
int mcz_grid_levels(const mcz_grid* g);
/* 0 on a null handle. */
size_t mcz_grid_size(const mcz_grid* g);
int mcz_grid_get(const mcz_grid* g, size_t index, double* out);
int mcz_grid_set(mcz_grid* g, size_t index, double value);
void mcz_grid_free(mcz_grid* g);

#ifdef __cplusplus
}
#endif

#endif /* MCZ_CAPI_H */
