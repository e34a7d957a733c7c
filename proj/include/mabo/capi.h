/* C interface to the MABO library: multi-agent Bayesian optimization with
 * ADMM consensus coordination, plus the full-information ADMM baseline.
 *
 * All functions return MABO_OK on success; on failure mabo_last_error()
 * holds a message for the calling thread. Handles are opaque and must be
 * released with the matching *_free call.
 */
#ifndef MABO_CAPI_H
#define MABO_CAPI_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum mabo_status {
    MABO_OK = 0,
    MABO_ERR_INVALID_ARGUMENT = 1,
    MABO_ERR_CONFIG = 2, /* run-config schema violation */
    MABO_ERR_IO = 3,
    MABO_ERR_NUMERICAL = 4,
    MABO_ERR_RUNTIME = 5
} mabo_status;

typedef struct mabo_config mabo_config;
typedef struct mabo_trace mabo_trace;

/* Black-box local cost: agent index, query point of length dim, user payload.
 * Called concurrently from agent workers, so it must be thread-safe, and it
 * must be pure for runs to be reproducible. */
typedef double (*mabo_oracle_fn)(int agent, const double* x, int dim, void* user);

const char* mabo_status_name(mabo_status status);

/* Message for the last failing call on the current thread ("" if none). */
const char* mabo_last_error(void);

/* ---- run configs ------------------------------------------------------- */

mabo_status mabo_config_load(const char* path, mabo_config** out);
mabo_status mabo_config_parse(const char* json_text, mabo_config** out);
void mabo_config_free(mabo_config* cfg);

/* Override the run seed (a defaulted fleet seed is re-derived from it). */
mabo_status mabo_config_set_seed(mabo_config* cfg, uint64_t seed);

int mabo_config_n_agents(const mabo_config* cfg);
int mabo_config_dim(const mabo_config* cfg);

/* 1 when the config carries evaluable local-cost models (platoon fleet or
 * named functions); 0 for callback-oracle configs. */
int mabo_config_models_known(const mabo_config* cfg);

/* Brute-force optimum of the summed local costs. Requires known models and a
 * 1-D domain. */
mabo_status mabo_config_true_optimum(const mabo_config* cfg, double* x_star, double* f_star);

/* ---- runs --------------------------------------------------------------- */

/* mode is "mabo" (GP agents) or "model-admm" (full-information baseline). */
mabo_status mabo_run(const mabo_config* cfg, const char* mode, mabo_trace** out);

/* As mabo_run(cfg, "mabo", ...) with local costs supplied by `fn`. */
mabo_status mabo_run_oracle(const mabo_config* cfg, mabo_oracle_fn fn, void* user,
                            mabo_trace** out);

/* ---- traces ------------------------------------------------------------- */

int mabo_trace_iterations(const mabo_trace* trace);
int mabo_trace_n_agents(const mabo_trace* trace);
int mabo_trace_dim(const mabo_trace* trace);

/* Consensus point after iteration k; x0 must hold dim doubles. */
mabo_status mabo_trace_consensus(const mabo_trace* trace, int k, double* x0);

mabo_status mabo_trace_residuals(const mabo_trace* trace, int k, double* primal, double* dual);

/* Agent state after iteration k. Any output pointer may be NULL; x and
 * lambda must hold dim doubles. */
mabo_status mabo_trace_agent(const mabo_trace* trace, int k, int agent, double* x,
                             double* lambda, double* y_latest);

/* Final consensus estimate (dim doubles). */
mabo_status mabo_trace_final(const mabo_trace* trace, double* x0);

mabo_status mabo_trace_write_csv(const mabo_trace* trace, const char* path);

/* Side-by-side consensus/residual columns of a BO run and a model-based run
 * sharing the same seed. */
mabo_status mabo_compare_write_csv(const mabo_trace* bo, const mabo_trace* model,
                                   const char* path);

void mabo_trace_free(mabo_trace* trace);

#ifdef __cplusplus
}
#endif

#endif /* MABO_CAPI_H */
