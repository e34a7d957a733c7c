#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <vector>

#include "mabo/acquisition.hpp"
#include "mabo/agent.hpp"
#include "mabo/box.hpp"

namespace mabo {

struct RunConfig {
    int n_agents = 1;
    Box domain;
    double rho = 10.0;
    int max_admm_iters = 30;
    std::vector<AcquisitionSpec> acquisitions;  // one per agent
    std::vector<int> inner_iters;               // one per agent
    int n0 = 3;
    std::uint64_t seed = 0;
    double noise_std = 0.0;
    HyperMode hyper_mode = HyperMode::refit;
    KernelParams fixed_params;  // when hyper_mode == fixed
    bool parallel_agents = true;
    // Per-agent RNG streams. Empty means derive from `seed`; explicit values
    // travel with their agent, which keeps runs agent-order invariant.
    std::vector<std::uint64_t> agent_seeds;

    void validate() const;  // throws std::invalid_argument
    std::vector<std::uint64_t> resolved_agent_seeds() const;
};

// State after ADMM iteration k: consensus, duals after the Eq.-style dual
// update, each agent's reported iterate and its newest observation.
struct IterationRecord {
    int k = 0;
    Eigen::VectorXd x0;
    Eigen::VectorXd x0_prev;
    double primal = 0.0;
    double dual = 0.0;
    std::vector<Eigen::VectorXd> xs;
    std::vector<Eigen::VectorXd> lambdas;
    std::vector<double> latest_y;
};

// Everything that crosses the coordinator/agent boundary. Payloads carry the
// coordinating variables inbound ([x0 | lambda]) and the decision outbound
// ([x]); observations never appear here.
struct Message {
    enum class Kind { theta_to_agent, decision_from_agent };
    Kind kind = Kind::theta_to_agent;
    int iteration = 0;
    int agent = 0;
    std::vector<double> payload;
};

struct RunTrace {
    int n_agents = 0;
    int dim = 0;
    double rho = 0.0;
    std::vector<IterationRecord> iterations;
    Eigen::VectorXd final_x0;
    std::vector<Message> messages;
};

// Synchronous consensus ADMM over N parallel BO agents. Deterministic for a
// given config; agent parallelism does not change results.
RunTrace run_mabo(const RunConfig& config, const std::vector<Oracle>& oracles);

// Same loop with full-information local subproblems instead of BO rounds.
RunTrace run_model_based_admm(const RunConfig& config, const std::vector<Oracle>& models);

}  // namespace mabo
