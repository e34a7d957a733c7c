#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <functional>
#include <random>

#include "mabo/acquisition.hpp"
#include "mabo/box.hpp"
#include "mabo/gp.hpp"

namespace mabo {

// Local cost callback. Must be pure (same x, same value) for runs to be
// reproducible.
using Oracle = std::function<double(const Eigen::VectorXd&)>;

enum class HyperMode { refit, fixed };

// Coordinating variables received from the coordinator each round.
struct Theta {
    Eigen::VectorXd x0;
    Eigen::VectorXd lambda;
};

// One local BO subsystem. Owns its data and RNG streams; never sees another
// agent's observations.
struct AgentState {
    int id = 0;
    Dataset data;
    AcquisitionSpec acq;
    Box domain;
    int inner_iters = 1;
    HyperMode hyper_mode = HyperMode::refit;
    KernelParams fixed_params;  // used when hyper_mode == fixed
    KernelBounds refit_bounds;  // used when hyper_mode == refit
    std::uint64_t rng_seed = 0;
    double noise_std = 0.0;  // additive Gaussian observation noise

    std::mt19937_64 data_rng;   // initial design points
    std::mt19937_64 noise_rng;  // observation noise
    std::uint64_t hyper_seed = 0;
};

// ML-II search box used by refitting agents: lengthscales tied to the domain
// widths, signal variance around the standardized-target scale.
KernelBounds default_refit_bounds(const Box& domain, double noise_std);

AgentState make_agent(int id, AcquisitionSpec acq, Box domain, int inner_iters,
                      HyperMode hyper_mode, const KernelParams& fixed_params,
                      std::uint64_t rng_seed, double noise_std);

// Evaluate n0 seeded uniform points and record the observations.
void seed_initial_data(AgentState& agent, const Oracle& oracle, int n0);

// One ADMM round of local Bayesian optimization: inner_iters times
// {fit GP -> minimize penalized acquisition -> query -> record}, then return
// the final iterate. On error the dataset is left untouched.
Eigen::VectorXd local_bo_round(AgentState& agent, const Theta& theta, double rho,
                               const Oracle& oracle);

}  // namespace mabo
