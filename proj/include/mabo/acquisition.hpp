#pragma once

#include <Eigen/Core>

#include "mabo/box.hpp"
#include "mabo/gp.hpp"

namespace mabo {

enum class AcquisitionKind { lcb, ei, pi, greedy_mean };

// Everything is in minimization convention: smaller acquisition values mark
// more desirable query points, so EI and PI are negated.
struct AcquisitionSpec {
    AcquisitionKind kind = AcquisitionKind::lcb;
    double beta = 4.0;  // LCB width multiplier (under the square root)
    double xi = 0.01;   // EI/PI improvement offset

    void validate() const;  // throws std::invalid_argument
};

// Score a candidate from its posterior (mean, stddev) and the incumbent
// best observation f_best. f_best is ignored by LCB and greedy-mean.
double evaluate_acquisition(const AcquisitionSpec& spec, double mean, double stddev,
                            double f_best);

// Coordinating variables for the consensus penalty: dual lambda_i, consensus
// point x0 and penalty weight rho.
struct PenaltyParams {
    Eigen::VectorXd lambda;
    Eigen::VectorXd x0;
    double rho = 10.0;
};

// delta_i(x) = lambda^T x + rho/2 ||x - x0||^2
double penalty(const Eigen::VectorXd& x, const PenaltyParams& params);

// argmin over the domain of acquisition(predict(x)) + penalty(x).
// Dense grid scan plus local refinement; the returned value never exceeds
// the best grid node.
Eigen::VectorXd minimize_penalized(const GpPosterior& post, const AcquisitionSpec& spec,
                                   const PenaltyParams& params, const Box& domain);

}  // namespace mabo
