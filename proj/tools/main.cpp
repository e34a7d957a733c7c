// Command-line front end over the mabo C API: run a MABO or model-based ADMM
// simulation from a config file and emit the per-iteration CSV trace.
#include <cstdint>
#include <cstdio>
#include <memory>
#include <string>

#include <CLI11.hpp>

#include "mabo/capi.h"

namespace {

constexpr int kExitRuntime = 1;
constexpr int kExitConfig = 2;

struct ConfigDeleter {
    void operator()(mabo_config* c) const { mabo_config_free(c); }
};
struct TraceDeleter {
    void operator()(mabo_trace* t) const { mabo_trace_free(t); }
};
using ConfigPtr = std::unique_ptr<mabo_config, ConfigDeleter>;
using TracePtr = std::unique_ptr<mabo_trace, TraceDeleter>;

int status_to_exit(mabo_status st) {
    return (st == MABO_ERR_CONFIG || st == MABO_ERR_INVALID_ARGUMENT) ? kExitConfig : kExitRuntime;
}

int report(const char* what, mabo_status st) {
    std::fprintf(stderr, "mabo: %s: %s: %s\n", what, mabo_status_name(st), mabo_last_error());
    return status_to_exit(st);
}

ConfigPtr load_config(const std::string& path, bool has_seed, std::uint64_t seed, int* exit_code) {
    mabo_config* raw = nullptr;
    mabo_status st = mabo_config_load(path.c_str(), &raw);
    if (st != MABO_OK) {
        *exit_code = report("config", st);
        return nullptr;
    }
    ConfigPtr cfg(raw);
    if (has_seed) mabo_config_set_seed(cfg.get(), seed);
    *exit_code = 0;
    return cfg;
}

void print_summary(const char* label, const mabo_config* cfg, const mabo_trace* trace) {
    const int last = mabo_trace_iterations(trace) - 1;
    double x0 = 0.0, r = 0.0, s = 0.0;
    mabo_trace_final(trace, &x0);
    mabo_trace_residuals(trace, last, &r, &s);
    std::printf("%s: final x0 = %.6g, primal residual = %.6g, dual residual = %.6g", label, x0, r,
                s);
    if (mabo_config_models_known(cfg) && mabo_config_dim(cfg) == 1) {
        double x_star = 0.0, f_star = 0.0;
        if (mabo_config_true_optimum(cfg, &x_star, &f_star) == MABO_OK)
            std::printf(", |x0 - x*| = %.6g (x* = %.6g)", x0 > x_star ? x0 - x_star : x_star - x0,
                        x_star);
    }
    std::printf("\n");
}

int cmd_run(const std::string& config_path, const std::string& out_path, const std::string& mode,
            bool has_seed, std::uint64_t seed) {
    int exit_code = 0;
    ConfigPtr cfg = load_config(config_path, has_seed, seed, &exit_code);
    if (!cfg) return exit_code;

    if (mode == "model-admm" && !mabo_config_models_known(cfg.get())) {
        std::fprintf(stderr, "mabo: run: config error: oracle.type: the model-admm baseline "
                             "needs known models (platoon or functions)\n");
        return kExitConfig;
    }

    mabo_trace* raw = nullptr;
    mabo_status st = mabo_run(cfg.get(), mode.c_str(), &raw);
    if (st != MABO_OK) return report("run", st);
    TracePtr trace(raw);

    st = mabo_trace_write_csv(trace.get(), out_path.c_str());
    if (st != MABO_OK) return report("write", st);

    print_summary(mode.c_str(), cfg.get(), trace.get());
    return 0;
}

int cmd_compare(const std::string& config_path, const std::string& out_path, bool has_seed,
                std::uint64_t seed) {
    int exit_code = 0;
    ConfigPtr cfg = load_config(config_path, has_seed, seed, &exit_code);
    if (!cfg) return exit_code;

    if (!mabo_config_models_known(cfg.get())) {
        std::fprintf(stderr, "mabo: compare: config error: oracle.type: comparison needs known "
                             "models (platoon or functions) for the model-admm baseline\n");
        return kExitConfig;
    }

    mabo_trace* raw_bo = nullptr;
    mabo_status st = mabo_run(cfg.get(), "mabo", &raw_bo);
    if (st != MABO_OK) return report("run (mabo)", st);
    TracePtr bo(raw_bo);

    mabo_trace* raw_model = nullptr;
    st = mabo_run(cfg.get(), "model-admm", &raw_model);
    if (st != MABO_OK) return report("run (model-admm)", st);
    TracePtr model(raw_model);

    st = mabo_compare_write_csv(bo.get(), model.get(), out_path.c_str());
    if (st != MABO_OK) return report("write", st);

    print_summary("mabo", cfg.get(), bo.get());
    print_summary("model-admm", cfg.get(), model.get());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Multi-agent Bayesian optimization with ADMM consensus coordination"};
    app.require_subcommand(1);

    std::string config_path, out_path, mode = "mabo";
    std::uint64_t seed = 0;
    bool has_seed = false;

    CLI::App* run = app.add_subcommand("run", "Execute one MABO or model-based ADMM run");
    run->add_option("--config", config_path, "Run config file (JSON)")->required();
    run->add_option("--out", out_path, "Output CSV trace path")->required();
    run->add_option("--mode", mode, "mabo or model-admm")
        ->check(CLI::IsMember({"mabo", "model-admm"}));
    run->add_option("--seed", seed, "Override the config seed")->each([&](const std::string&) {
        has_seed = true;
    });

    CLI::App* compare =
        app.add_subcommand("compare", "Run both modes under one seed, side-by-side residuals");
    compare->add_option("--config", config_path, "Run config file (JSON)")->required();
    compare->add_option("--out", out_path, "Output CSV path")->required();
    compare->add_option("--seed", seed, "Override the config seed")->each([&](const std::string&) {
        has_seed = true;
    });

    CLI11_PARSE(app, argc, argv);

    if (run->parsed()) return cmd_run(config_path, out_path, mode, has_seed, seed);
    return cmd_compare(config_path, out_path, has_seed, seed);
}
