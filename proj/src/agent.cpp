#include "mabo/agent.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "mabo/errors.hpp"
#include "mabo/seed.hpp"

namespace mabo {

namespace {

// Stream ids for the per-agent RNG split.
enum : std::uint64_t { kStreamInit = 0, kStreamData = 1, kStreamNoise = 2, kStreamHyper = 3 };

std::string point_to_string(const Eigen::VectorXd& x) {
    std::ostringstream os;
    os << "(";
    for (int i = 0; i < x.size(); ++i) os << (i ? ", " : "") << x[i];
    os << ")";
    return os.str();
}

double observe(AgentState& agent, const Oracle& oracle, const Eigen::VectorXd& x) {
    double y = oracle(x);
    if (!std::isfinite(y))
        throw NumericalError("agent " + std::to_string(agent.id) +
                             ": oracle returned a non-finite value at " + point_to_string(x));
    if (agent.noise_std > 0.0) {
        std::normal_distribution<double> w(0.0, agent.noise_std);
        y += w(agent.noise_rng);
    }
    return y;
}

}  // namespace

KernelBounds default_refit_bounds(const Box& domain, double noise_std) {
    KernelBounds b;
    const int d = domain.dim();
    b.lower.signal_variance = 0.05;
    b.upper.signal_variance = 20.0;
    b.lower.lengthscales.resize(d);
    b.upper.lengthscales.resize(d);
    for (int i = 0; i < d; ++i) {
        double w = domain.upper[i] - domain.lower[i];
        b.lower.lengthscales[i] = w / 100.0;
        b.upper.lengthscales[i] = 2.0 * w;
    }
    b.lower.noise_variance = 1e-8;
    // noisy oracles need room for the fitted noise; noiseless ones stay tight
    b.upper.noise_variance = noise_std > 0.0 ? 1.0 : 1e-2;
    return b;
}

AgentState make_agent(int id, AcquisitionSpec acq, Box domain, int inner_iters,
                      HyperMode hyper_mode, const KernelParams& fixed_params,
                      std::uint64_t rng_seed, double noise_std) {
    if (inner_iters < 1) throw std::invalid_argument("make_agent: inner_iters must be >= 1");
    acq.validate();
    if (hyper_mode == HyperMode::fixed) fixed_params.validate(domain.dim());

    AgentState agent;
    agent.id = id;
    agent.acq = acq;
    agent.domain = std::move(domain);
    agent.inner_iters = inner_iters;
    agent.hyper_mode = hyper_mode;
    agent.fixed_params = fixed_params;
    agent.refit_bounds = default_refit_bounds(agent.domain, noise_std);
    agent.rng_seed = rng_seed;
    agent.noise_std = noise_std;
    agent.data_rng.seed(derive_seed(rng_seed, kStreamData));
    agent.noise_rng.seed(derive_seed(rng_seed, kStreamNoise));
    agent.hyper_seed = derive_seed(rng_seed, kStreamHyper);
    return agent;
}

void seed_initial_data(AgentState& agent, const Oracle& oracle, int n0) {
    if (n0 < 1) throw std::invalid_argument("seed_initial_data: n0 must be >= 1");
    const int d = agent.domain.dim();
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int j = 0; j < n0; ++j) {
        Eigen::VectorXd x(d);
        for (int c = 0; c < d; ++c)
            x[c] = agent.domain.lower[c] + unit(agent.data_rng) * (agent.domain.upper[c] - agent.domain.lower[c]);
        agent.data.append(x, observe(agent, oracle, x));
    }
}

Eigen::VectorXd local_bo_round(AgentState& agent, const Theta& theta, double rho,
                               const Oracle& oracle) {
    if (agent.data.empty())
        throw std::invalid_argument("local_bo_round: agent has no seed data");
    if (theta.x0.size() != agent.domain.dim() || theta.lambda.size() != agent.domain.dim())
        throw std::invalid_argument("local_bo_round: theta dimension mismatch");

    // the round is atomic: stage into a copy, commit on success
    Dataset staged = agent.data;
    PenaltyParams pen{theta.lambda, theta.x0, rho};
    Eigen::VectorXd x;
    for (int j = 0; j < agent.inner_iters; ++j) {
        KernelParams params;
        if (agent.hyper_mode == HyperMode::fixed) {
            params = agent.fixed_params;
        } else if (staged.size() >= 2) {
            params = optimize_hyperparameters(staged, agent.refit_bounds, agent.hyper_seed);
        } else {
            // a single observation cannot support ML-II; use the bounds midpoint
            params.signal_variance = std::sqrt(agent.refit_bounds.lower.signal_variance *
                                               agent.refit_bounds.upper.signal_variance);
            params.lengthscales = (agent.refit_bounds.lower.lengthscales.array() *
                                   agent.refit_bounds.upper.lengthscales.array())
                                      .sqrt();
            params.noise_variance = agent.refit_bounds.lower.noise_variance;
        }
        GpPosterior post = fit_gp(staged, params);
        x = minimize_penalized(post, agent.acq, pen, agent.domain);
        staged.append(x, observe(agent, oracle, x));
    }
    agent.data = std::move(staged);
    return x;
}

}  // namespace mabo
