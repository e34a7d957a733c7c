#include "mabo/admm.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "mabo/optimize.hpp"

namespace mabo {

namespace {

// Sums in ascending value order so that permuting the agents cannot change
// the floating-point result.
double ordered_sum(std::vector<double>& terms) {
    std::sort(terms.begin(), terms.end());
    double s = 0.0;
    for (double t : terms) s += t;
    return s;
}

}  // namespace

CoordinatorState CoordinatorState::init(const Box& domain, int n_agents, double rho) {
    if (n_agents < 1) throw std::invalid_argument("CoordinatorState: n_agents must be >= 1");
    if (!(rho > 0.0)) throw std::invalid_argument("CoordinatorState: rho must be > 0");
    CoordinatorState state;
    state.x0 = domain.midpoint();
    state.x0_prev = state.x0;
    state.lambdas.assign(n_agents, Eigen::VectorXd::Zero(domain.dim()));
    state.rho = rho;
    state.n_agents = n_agents;
    return state;
}

Eigen::VectorXd update_consensus(CoordinatorState& state, const std::vector<Eigen::VectorXd>& xs) {
    if (static_cast<int>(xs.size()) != state.n_agents)
        throw std::invalid_argument("update_consensus: expected " +
                                    std::to_string(state.n_agents) + " agent iterates");
    const int dim = static_cast<int>(state.x0.size());
    for (const auto& x : xs) {
        if (x.size() != dim) throw std::invalid_argument("update_consensus: dimension mismatch");
    }
    Eigen::VectorXd next(dim);
    std::vector<double> terms(xs.size());
    for (int c = 0; c < dim; ++c) {
        for (std::size_t i = 0; i < xs.size(); ++i)
            terms[i] = xs[i][c] + state.lambdas[i][c] / state.rho;
        next[c] = ordered_sum(terms) / static_cast<double>(state.n_agents);
    }
    state.x0_prev = state.x0;
    state.x0 = next;
    return next;
}

Eigen::VectorXd update_dual(const Eigen::VectorXd& lambda, const Eigen::VectorXd& x_i,
                            const Eigen::VectorXd& x0, double rho) {
    if (lambda.size() != x_i.size() || lambda.size() != x0.size())
        throw std::invalid_argument("update_dual: dimension mismatch");
    return lambda + rho * (x_i - x0);
}

Residuals residuals(const CoordinatorState& state, const std::vector<Eigen::VectorXd>& xs) {
    if (static_cast<int>(xs.size()) != state.n_agents)
        throw std::invalid_argument("residuals: expected " + std::to_string(state.n_agents) +
                                    " agent iterates");
    std::vector<double> terms(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (xs[i].size() != state.x0.size())
            throw std::invalid_argument("residuals: dimension mismatch");
        terms[i] = (xs[i] - state.x0).squaredNorm();
    }
    Residuals res;
    res.primal = ordered_sum(terms);
    res.dual = state.n_agents * state.rho * state.rho * (state.x0 - state.x0_prev).squaredNorm();
    return res;
}

Eigen::VectorXd model_based_subproblem(const std::function<double(const Eigen::VectorXd&)>& f,
                                       const PenaltyParams& params, const Box& domain) {
    if (params.lambda.size() != domain.dim() || params.x0.size() != domain.dim())
        throw std::invalid_argument("model_based_subproblem: penalty dimension mismatch");
    ScalarField objective = [&](const Eigen::VectorXd& x) { return f(x) + penalty(x, params); };
    return minimize_on_box(objective, domain).argmin;
}

}  // namespace mabo
