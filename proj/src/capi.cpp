#include "mabo/capi.h"

#include <cstring>
#include <functional>
#include <exception>
#include <new>
#include <string>

#include "mabo/config.hpp"
#include "mabo/errors.hpp"
#include "mabo/runtime.hpp"
#include "mabo/trace_csv.hpp"

namespace {

thread_local std::string g_last_error;

struct ConfigHandle {
    mabo::FullConfig cfg;
};

struct TraceHandle {
    mabo::RunTrace trace;
};

mabo_status fail(mabo_status code, const std::string& message) {
    g_last_error = message;
    return code;
}

// Map the library's exception types onto C status codes.
mabo_status guard(const std::function<mabo_status()>& body) {
    try {
        g_last_error.clear();
        return body();
    } catch (const mabo::ConfigError& e) {
        return fail(MABO_ERR_CONFIG, e.what());
    } catch (const mabo::NumericalError& e) {
        return fail(MABO_ERR_NUMERICAL, e.what());
    } catch (const std::invalid_argument& e) {
        return fail(MABO_ERR_INVALID_ARGUMENT, e.what());
    } catch (const std::bad_alloc&) {
        return fail(MABO_ERR_RUNTIME, "out of memory");
    } catch (const std::exception& e) {
        return fail(MABO_ERR_RUNTIME, e.what());
    }
}

const mabo::FullConfig* unwrap(const mabo_config* cfg) {
    return cfg ? &reinterpret_cast<const ConfigHandle*>(cfg)->cfg : nullptr;
}

const mabo::RunTrace* unwrap(const mabo_trace* trace) {
    return trace ? &reinterpret_cast<const TraceHandle*>(trace)->trace : nullptr;
}

mabo_status run_impl(const mabo_config* cfg, const char* mode, mabo_trace** out) {
    const mabo::FullConfig* full = unwrap(cfg);
    if (!full || !mode || !out)
        return fail(MABO_ERR_INVALID_ARGUMENT, "null argument");
    return guard([&]() {
        std::vector<mabo::Oracle> fns = mabo::build_oracles(*full);
        mabo::RunTrace trace;
        if (std::strcmp(mode, "mabo") == 0) {
            trace = mabo::run_mabo(full->run, fns);
        } else if (std::strcmp(mode, "model-admm") == 0) {
            trace = mabo::run_model_based_admm(full->run, fns);
        } else {
            return fail(MABO_ERR_INVALID_ARGUMENT,
                        std::string("unknown mode \"") + mode + "\" (expected mabo or model-admm)");
        }
        *out = reinterpret_cast<mabo_trace*>(new TraceHandle{std::move(trace)});
        return MABO_OK;
    });
}

}  // namespace

extern "C" {

const char* mabo_status_name(mabo_status status) {
    switch (status) {
        case MABO_OK: return "ok";
        case MABO_ERR_INVALID_ARGUMENT: return "invalid argument";
        case MABO_ERR_CONFIG: return "config error";
        case MABO_ERR_IO: return "io error";
        case MABO_ERR_NUMERICAL: return "numerical error";
        case MABO_ERR_RUNTIME: return "runtime error";
    }
    return "unknown";
}

const char* mabo_last_error(void) { return g_last_error.c_str(); }

mabo_status mabo_config_load(const char* path, mabo_config** out) {
    if (!path || !out) return fail(MABO_ERR_INVALID_ARGUMENT, "null argument");
    return guard([&]() {
        try {
            mabo::FullConfig cfg = mabo::load_config_file(path);
            *out = reinterpret_cast<mabo_config*>(new ConfigHandle{std::move(cfg)});
            return MABO_OK;
        } catch (const mabo::ConfigError&) {
            throw;
        } catch (const std::runtime_error& e) {
            return fail(MABO_ERR_IO, e.what());
        }
    });
}

mabo_status mabo_config_parse(const char* json_text, mabo_config** out) {
    if (!json_text || !out) return fail(MABO_ERR_INVALID_ARGUMENT, "null argument");
    return guard([&]() {
        mabo::FullConfig cfg = mabo::parse_config(json_text);
        *out = reinterpret_cast<mabo_config*>(new ConfigHandle{std::move(cfg)});
        return MABO_OK;
    });
}

void mabo_config_free(mabo_config* cfg) { delete reinterpret_cast<ConfigHandle*>(cfg); }

mabo_status mabo_config_set_seed(mabo_config* cfg, uint64_t seed) {
    if (!cfg) return fail(MABO_ERR_INVALID_ARGUMENT, "null config");
    reinterpret_cast<ConfigHandle*>(cfg)->cfg.set_seed(seed);
    return MABO_OK;
}

int mabo_config_n_agents(const mabo_config* cfg) {
    const mabo::FullConfig* full = unwrap(cfg);
    return full ? full->run.n_agents : -1;
}

int mabo_config_dim(const mabo_config* cfg) {
    const mabo::FullConfig* full = unwrap(cfg);
    return full ? full->run.domain.dim() : -1;
}

int mabo_config_models_known(const mabo_config* cfg) {
    const mabo::FullConfig* full = unwrap(cfg);
    return full && mabo::oracle_models_known(*full) ? 1 : 0;
}

mabo_status mabo_config_true_optimum(const mabo_config* cfg, double* x_star, double* f_star) {
    const mabo::FullConfig* full = unwrap(cfg);
    if (!full) return fail(MABO_ERR_INVALID_ARGUMENT, "null config");
    return guard([&]() {
        auto opt = mabo::known_optimum(*full);
        if (!opt)
            return fail(MABO_ERR_INVALID_ARGUMENT,
                        "true optimum needs known models and a 1-D domain");
        if (x_star) *x_star = opt->first;
        if (f_star) *f_star = opt->second;
        return MABO_OK;
    });
}

mabo_status mabo_run(const mabo_config* cfg, const char* mode, mabo_trace** out) {
    return run_impl(cfg, mode, out);
}

mabo_status mabo_run_oracle(const mabo_config* cfg, mabo_oracle_fn fn, void* user,
                            mabo_trace** out) {
    const mabo::FullConfig* full = unwrap(cfg);
    if (!full || !fn || !out) return fail(MABO_ERR_INVALID_ARGUMENT, "null argument");
    return guard([&]() {
        const int dim = full->run.domain.dim();
        std::vector<mabo::Oracle> fns;
        fns.reserve(full->run.n_agents);
        for (int i = 0; i < full->run.n_agents; ++i) {
            fns.push_back([fn, user, i, dim](const Eigen::VectorXd& x) {
                return fn(i, x.data(), dim, user);
            });
        }
        mabo::RunTrace trace = mabo::run_mabo(full->run, fns);
        *out = reinterpret_cast<mabo_trace*>(new TraceHandle{std::move(trace)});
        return MABO_OK;
    });
}

int mabo_trace_iterations(const mabo_trace* trace) {
    const mabo::RunTrace* t = unwrap(trace);
    return t ? static_cast<int>(t->iterations.size()) : -1;
}

int mabo_trace_n_agents(const mabo_trace* trace) {
    const mabo::RunTrace* t = unwrap(trace);
    return t ? t->n_agents : -1;
}

int mabo_trace_dim(const mabo_trace* trace) {
    const mabo::RunTrace* t = unwrap(trace);
    return t ? t->dim : -1;
}

mabo_status mabo_trace_consensus(const mabo_trace* trace, int k, double* x0) {
    const mabo::RunTrace* t = unwrap(trace);
    if (!t || !x0) return fail(MABO_ERR_INVALID_ARGUMENT, "null argument");
    if (k < 0 || k >= static_cast<int>(t->iterations.size()))
        return fail(MABO_ERR_INVALID_ARGUMENT, "iteration index out of range");
    const Eigen::VectorXd& v = t->iterations[k].x0;
    for (int c = 0; c < v.size(); ++c) x0[c] = v[c];
    return MABO_OK;
}

mabo_status mabo_trace_residuals(const mabo_trace* trace, int k, double* primal, double* dual) {
    const mabo::RunTrace* t = unwrap(trace);
    if (!t) return fail(MABO_ERR_INVALID_ARGUMENT, "null trace");
    if (k < 0 || k >= static_cast<int>(t->iterations.size()))
        return fail(MABO_ERR_INVALID_ARGUMENT, "iteration index out of range");
    if (primal) *primal = t->iterations[k].primal;
    if (dual) *dual = t->iterations[k].dual;
    return MABO_OK;
}

mabo_status mabo_trace_agent(const mabo_trace* trace, int k, int agent, double* x, double* lambda,
                             double* y_latest) {
    const mabo::RunTrace* t = unwrap(trace);
    if (!t) return fail(MABO_ERR_INVALID_ARGUMENT, "null trace");
    if (k < 0 || k >= static_cast<int>(t->iterations.size()))
        return fail(MABO_ERR_INVALID_ARGUMENT, "iteration index out of range");
    if (agent < 0 || agent >= t->n_agents)
        return fail(MABO_ERR_INVALID_ARGUMENT, "agent index out of range");
    const mabo::IterationRecord& rec = t->iterations[k];
    if (x) {
        for (int c = 0; c < t->dim; ++c) x[c] = rec.xs[agent][c];
    }
    if (lambda) {
        for (int c = 0; c < t->dim; ++c) lambda[c] = rec.lambdas[agent][c];
    }
    if (y_latest) *y_latest = rec.latest_y[agent];
    return MABO_OK;
}

mabo_status mabo_trace_final(const mabo_trace* trace, double* x0) {
    const mabo::RunTrace* t = unwrap(trace);
    if (!t || !x0) return fail(MABO_ERR_INVALID_ARGUMENT, "null argument");
    for (int c = 0; c < t->final_x0.size(); ++c) x0[c] = t->final_x0[c];
    return MABO_OK;
}

mabo_status mabo_trace_write_csv(const mabo_trace* trace, const char* path) {
    const mabo::RunTrace* t = unwrap(trace);
    if (!t || !path) return fail(MABO_ERR_INVALID_ARGUMENT, "null argument");
    return guard([&]() {
        try {
            mabo::write_trace_csv_file(*t, path);
            return MABO_OK;
        } catch (const std::runtime_error& e) {
            return fail(MABO_ERR_IO, e.what());
        }
    });
}

mabo_status mabo_compare_write_csv(const mabo_trace* bo, const mabo_trace* model,
                                   const char* path) {
    const mabo::RunTrace* a = unwrap(bo);
    const mabo::RunTrace* b = unwrap(model);
    if (!a || !b || !path) return fail(MABO_ERR_INVALID_ARGUMENT, "null argument");
    return guard([&]() {
        try {
            mabo::write_compare_csv_file(*a, *b, path);
            return MABO_OK;
        } catch (const std::invalid_argument&) {
            throw;
        } catch (const std::runtime_error& e) {
            return fail(MABO_ERR_IO, e.what());
        }
    });
}

void mabo_trace_free(mabo_trace* trace) { delete reinterpret_cast<TraceHandle*>(trace); }

}  // extern "C"
