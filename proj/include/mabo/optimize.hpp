#pragma once

#include <Eigen/Core>
#include <functional>

#include "mabo/box.hpp"

namespace mabo {

using ScalarField = std::function<double(const Eigen::VectorXd&)>;

struct BoxMinimum {
    Eigen::VectorXd argmin;
    double value = 0.0;
    Eigen::VectorXd grid_argmin;  // best dense-grid node before refinement
    double grid_value = 0.0;
};

// Dense-grid nodes used per dimension (1-D: 2001; 2-D: 45; 3-D: 13).
int grid_nodes_per_dim(int dim);

// Deterministic derivative-free minimization over a box: dense grid scan,
// then golden-section refinement (1-D) or coordinate-descent pattern search
// from 32 Latin-hypercube starts plus the best grid node (2-D/3-D). The
// result never exceeds the best grid node. Throws NumericalError naming the
// point if f is non-finite at a grid node; dimensions above 3 are rejected.
// nodes_override replaces the 1-D grid size when positive.
BoxMinimum minimize_on_box(const ScalarField& f, const Box& domain, long nodes_override = 0);

// Monotone coordinate-descent pattern search from `start`, clipped to the
// box. Steps start at `step` and halve whenever a sweep fails to improve,
// until every component drops below `tol`.
Eigen::VectorXd pattern_search(const ScalarField& f, const Box& domain, Eigen::VectorXd start,
                               Eigen::VectorXd step, const Eigen::VectorXd& tol,
                               double* value_out = nullptr);

}  // namespace mabo
