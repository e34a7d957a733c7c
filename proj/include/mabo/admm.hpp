#pragma once

#include <Eigen/Core>
#include <functional>
#include <vector>

#include "mabo/acquisition.hpp"
#include "mabo/box.hpp"

namespace mabo {

// Coordinator side of the consensus problem: the shared variable x0, its
// previous value, and one dual vector per agent.
struct CoordinatorState {
    Eigen::VectorXd x0;
    Eigen::VectorXd x0_prev;
    std::vector<Eigen::VectorXd> lambdas;
    double rho = 10.0;
    int n_agents = 0;

    // x0 at the domain midpoint, all duals zero.
    static CoordinatorState init(const Box& domain, int n_agents, double rho);
};

// x0 <- 1/N sum_i (x_i + lambda_i / rho). Records x0_prev before the
// overwrite and returns the new consensus point.
Eigen::VectorXd update_consensus(CoordinatorState& state, const std::vector<Eigen::VectorXd>& xs);

// lambda_i + rho (x_i - x0)
Eigen::VectorXd update_dual(const Eigen::VectorXd& lambda, const Eigen::VectorXd& x_i,
                            const Eigen::VectorXd& x0, double rho);

struct Residuals {
    double primal = 0.0;  // sum_i ||x_i - x0||^2
    double dual = 0.0;    // N rho^2 ||x0 - x0_prev||^2
};

Residuals residuals(const CoordinatorState& state, const std::vector<Eigen::VectorXd>& xs);

// Full-information local step: argmin over the domain of f(x) + penalty(x),
// solved with the same grid-plus-refinement scheme as minimize_penalized.
// Raises NumericalError naming the point if f is non-finite on the grid.
Eigen::VectorXd model_based_subproblem(const std::function<double(const Eigen::VectorXd&)>& f,
                                       const PenaltyParams& params, const Box& domain);

}  // namespace mabo
