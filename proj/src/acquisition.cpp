#include "mabo/acquisition.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "mabo/optimize.hpp"

namespace mabo {

namespace {

double normal_pdf(double z) {
    return std::exp(-0.5 * z * z) / std::sqrt(2.0 * std::numbers::pi);
}

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

}  // namespace

void AcquisitionSpec::validate() const {
    if (kind == AcquisitionKind::lcb && !(beta > 0.0))
        throw std::invalid_argument("AcquisitionSpec: beta must be > 0 for LCB");
    if (!(xi >= 0.0)) throw std::invalid_argument("AcquisitionSpec: xi must be >= 0");
}

double evaluate_acquisition(const AcquisitionSpec& spec, double mean, double stddev,
                            double f_best) {
    spec.validate();
    if (stddev < 0.0) throw std::invalid_argument("evaluate_acquisition: stddev must be >= 0");

    switch (spec.kind) {
        case AcquisitionKind::lcb:
            return mean - std::sqrt(spec.beta) * stddev;
        case AcquisitionKind::greedy_mean:
            return mean;
        default:
            break;
    }

    if (!std::isfinite(f_best))
        throw std::invalid_argument("evaluate_acquisition: f_best must be finite for EI/PI");
    const double improvement = f_best - mean - spec.xi;
    if (stddev == 0.0) {
        // z = +inf when improvement is certain, -inf otherwise
        if (spec.kind == AcquisitionKind::pi) return improvement > 0.0 ? -1.0 : 0.0;
        return -std::max(improvement, 0.0);
    }
    const double z = improvement / stddev;
    if (spec.kind == AcquisitionKind::pi) return -normal_cdf(z);
    return -(improvement * normal_cdf(z) + stddev * normal_pdf(z));
}

double penalty(const Eigen::VectorXd& x, const PenaltyParams& params) {
    if (x.size() != params.lambda.size() || x.size() != params.x0.size())
        throw std::invalid_argument("penalty: dimension mismatch");
    if (!(params.rho > 0.0)) throw std::invalid_argument("penalty: rho must be > 0");
    return params.lambda.dot(x) + 0.5 * params.rho * (x - params.x0).squaredNorm();
}

Eigen::VectorXd minimize_penalized(const GpPosterior& post, const AcquisitionSpec& spec,
                                   const PenaltyParams& params, const Box& domain) {
    spec.validate();
    if (domain.dim() != post.training().dim())
        throw std::invalid_argument("minimize_penalized: domain does not match the posterior");
    if (params.lambda.size() != domain.dim() || params.x0.size() != domain.dim())
        throw std::invalid_argument("minimize_penalized: penalty dimension mismatch");

    const double f_best = post.training().min_y();
    ScalarField objective = [&](const Eigen::VectorXd& x) {
        auto [mean, var] = post.predict(x);
        return evaluate_acquisition(spec, mean, std::sqrt(var), f_best) + penalty(x, params);
    };
    return minimize_on_box(objective, domain).argmin;
}

}  // namespace mabo
