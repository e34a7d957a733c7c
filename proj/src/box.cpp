#include "mabo/box.hpp"

#include <stdexcept>
#include <utility>

namespace mabo {

Box::Box(Eigen::VectorXd lo, Eigen::VectorXd hi) : lower(std::move(lo)), upper(std::move(hi)) {
    if (lower.size() == 0) throw std::invalid_argument("Box: empty bounds");
    if (lower.size() != upper.size()) throw std::invalid_argument("Box: bound sizes differ");
    for (int i = 0; i < lower.size(); ++i) {
        if (!(lower[i] < upper[i]))
            throw std::invalid_argument("Box: lower bound must be below upper bound in dimension " +
                                        std::to_string(i));
    }
}

Box Box::interval(double lo, double hi) {
    Eigen::VectorXd l(1), u(1);
    l << lo;
    u << hi;
    return Box(l, u);
}

bool Box::contains(const Eigen::VectorXd& x, double tol) const {
    if (x.size() != lower.size()) return false;
    for (int i = 0; i < x.size(); ++i) {
        if (x[i] < lower[i] - tol || x[i] > upper[i] + tol) return false;
    }
    return true;
}

Eigen::VectorXd Box::clip(const Eigen::VectorXd& x) const {
    if (x.size() != lower.size()) throw std::invalid_argument("Box::clip: dimension mismatch");
    return x.cwiseMax(lower).cwiseMin(upper);
}

}  // namespace mabo
