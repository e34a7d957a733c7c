#pragma once

#include <Eigen/Core>

namespace mabo {

// Axis-aligned box domain for decision variables.
struct Box {
    Eigen::VectorXd lower;
    Eigen::VectorXd upper;

    Box() = default;
    Box(Eigen::VectorXd lo, Eigen::VectorXd hi);

    // 1-D convenience constructor.
    static Box interval(double lo, double hi);

    int dim() const { return static_cast<int>(lower.size()); }
    Eigen::VectorXd widths() const { return upper - lower; }
    Eigen::VectorXd midpoint() const { return 0.5 * (lower + upper); }

    bool contains(const Eigen::VectorXd& x, double tol = 0.0) const;
    Eigen::VectorXd clip(const Eigen::VectorXd& x) const;
};

}  // namespace mabo
