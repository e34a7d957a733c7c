#include "mabo/runtime.hpp"

#include <cmath>
#include <future>
#include <stdexcept>
#include <utility>

#include "mabo/admm.hpp"
#include "mabo/errors.hpp"
#include "mabo/seed.hpp"

namespace mabo {

namespace {

// Stream id for the agents' initial iterates x_i^0 (kStream* ids in
// agent.cpp start at 0; this one is read from the same per-agent seed).
constexpr std::uint64_t kStreamInitialPoint = 0;

std::vector<double> to_payload(const Eigen::VectorXd& a) {
    return std::vector<double>(a.data(), a.data() + a.size());
}

std::vector<double> to_payload(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
    std::vector<double> out(a.data(), a.data() + a.size());
    out.insert(out.end(), b.data(), b.data() + b.size());
    return out;
}

struct LocalResult {
    Eigen::VectorXd x;
    double y = 0.0;
};

RunTrace run_loop(const RunConfig& config, const std::vector<Oracle>& fns, bool model_based) {
    config.validate();
    const int N = config.n_agents;
    const int dim = config.domain.dim();
    if (static_cast<int>(fns.size()) != N)
        throw std::invalid_argument("run: expected one local cost per agent");

    const std::vector<std::uint64_t> seeds = config.resolved_agent_seeds();

    // initial iterates x_i^0, uniform in the domain under each agent's stream
    std::vector<Eigen::VectorXd> xs(N, Eigen::VectorXd(dim));
    for (int i = 0; i < N; ++i) {
        std::mt19937_64 rng(derive_seed(seeds[i], kStreamInitialPoint));
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        for (int c = 0; c < dim; ++c)
            xs[i][c] = config.domain.lower[c] +
                       unit(rng) * (config.domain.upper[c] - config.domain.lower[c]);
    }

    std::vector<AgentState> agents;
    if (!model_based) {
        agents.reserve(N);
        for (int i = 0; i < N; ++i) {
            agents.push_back(make_agent(i, config.acquisitions[i], config.domain,
                                        config.inner_iters[i], config.hyper_mode,
                                        config.fixed_params, seeds[i], config.noise_std));
            try {
                seed_initial_data(agents[i], fns[i], config.n0);
            } catch (const std::exception& e) {
                throw RunError(-1, i, e.what());
            }
        }
    }

    CoordinatorState state = CoordinatorState::init(config.domain, N, config.rho);
    RunTrace trace;
    trace.n_agents = N;
    trace.dim = dim;
    trace.rho = config.rho;
    trace.iterations.reserve(config.max_admm_iters);

    for (int k = 0; k < config.max_admm_iters; ++k) {
        const Eigen::VectorXd x0 = update_consensus(state, xs);

        for (int i = 0; i < N; ++i) {
            trace.messages.push_back(Message{Message::Kind::theta_to_agent, k, i,
                                             to_payload(x0, state.lambdas[i])});
        }

        auto solve_one = [&](int i) -> LocalResult {
            if (model_based) {
                PenaltyParams pen{state.lambdas[i], x0, config.rho};
                Eigen::VectorXd xi = model_based_subproblem(fns[i], pen, config.domain);
                return {xi, fns[i](xi)};
            }
            Theta theta{x0, state.lambdas[i]};
            Eigen::VectorXd xi = local_bo_round(agents[i], theta, config.rho, fns[i]);
            return {xi, agents[i].data.y(agents[i].data.size() - 1)};
        };

        std::vector<LocalResult> results(N);
        if (config.parallel_agents) {
            std::vector<std::future<LocalResult>> futures;
            futures.reserve(N);
            for (int i = 0; i < N; ++i)
                futures.push_back(std::async(std::launch::async, solve_one, i));
            for (int i = 0; i < N; ++i) {
                try {
                    results[i] = futures[i].get();
                } catch (const std::exception& e) {
                    throw RunError(k, i, e.what());
                }
            }
        } else {
            for (int i = 0; i < N; ++i) {
                try {
                    results[i] = solve_one(i);
                } catch (const std::exception& e) {
                    throw RunError(k, i, e.what());
                }
            }
        }

        IterationRecord rec;
        rec.k = k;
        rec.latest_y.resize(N);
        for (int i = 0; i < N; ++i) {
            xs[i] = results[i].x;
            rec.latest_y[i] = results[i].y;
            trace.messages.push_back(
                Message{Message::Kind::decision_from_agent, k, i, to_payload(xs[i])});
        }
        for (int i = 0; i < N; ++i)
            state.lambdas[i] = update_dual(state.lambdas[i], xs[i], x0, config.rho);

        Residuals res = residuals(state, xs);
        rec.x0 = state.x0;
        rec.x0_prev = state.x0_prev;
        rec.primal = res.primal;
        rec.dual = res.dual;
        rec.xs = xs;
        rec.lambdas = state.lambdas;
        trace.iterations.push_back(std::move(rec));
    }

    trace.final_x0 = state.x0;
    return trace;
}

}  // namespace

void RunConfig::validate() const {
    if (n_agents < 1) throw std::invalid_argument("RunConfig: n_agents must be >= 1");
    if (domain.dim() < 1) throw std::invalid_argument("RunConfig: domain is empty");
    if (!(rho > 0.0)) throw std::invalid_argument("RunConfig: rho must be > 0");
    if (max_admm_iters < 1) throw std::invalid_argument("RunConfig: max_admm_iters must be >= 1");
    if (n0 < 1) throw std::invalid_argument("RunConfig: n0 must be >= 1");
    if (!(noise_std >= 0.0)) throw std::invalid_argument("RunConfig: noise_std must be >= 0");
    if (static_cast<int>(acquisitions.size()) != n_agents)
        throw std::invalid_argument("RunConfig: need one acquisition spec per agent");
    if (static_cast<int>(inner_iters.size()) != n_agents)
        throw std::invalid_argument("RunConfig: need one inner_iters entry per agent");
    for (const auto& a : acquisitions) a.validate();
    for (int j : inner_iters) {
        if (j < 1) throw std::invalid_argument("RunConfig: inner_iters entries must be >= 1");
    }
    if (hyper_mode == HyperMode::fixed) fixed_params.validate(domain.dim());
    if (!agent_seeds.empty() && static_cast<int>(agent_seeds.size()) != n_agents)
        throw std::invalid_argument("RunConfig: agent_seeds must be empty or one per agent");
}

std::vector<std::uint64_t> RunConfig::resolved_agent_seeds() const {
    if (!agent_seeds.empty()) return agent_seeds;
    std::vector<std::uint64_t> out(n_agents);
    for (int i = 0; i < n_agents; ++i) out[i] = derive_seed(seed, 1000 + i);
    return out;
}

RunTrace run_mabo(const RunConfig& config, const std::vector<Oracle>& oracles) {
    return run_loop(config, oracles, false);
}

RunTrace run_model_based_admm(const RunConfig& config, const std::vector<Oracle>& models) {
    return run_loop(config, models, true);
}

}  // namespace mabo
