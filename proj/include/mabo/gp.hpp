#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <utility>
#include <vector>

#include "mabo/errors.hpp"

namespace mabo {

// One agent's observation history (x, y) pairs. Append-only.
class Dataset {
public:
    void append(Eigen::VectorXd x, double y);

    std::size_t size() const { return ys_.size(); }
    bool empty() const { return ys_.empty(); }
    // Input dimension; -1 while empty.
    int dim() const { return xs_.empty() ? -1 : static_cast<int>(xs_.front().size()); }

    const Eigen::VectorXd& x(std::size_t i) const { return xs_.at(i); }
    double y(std::size_t i) const { return ys_.at(i); }

    // Incumbent best (smallest observed cost). Throws on an empty dataset.
    double min_y() const;

private:
    std::vector<Eigen::VectorXd> xs_;
    std::vector<double> ys_;
};

// Squared-exponential kernel hyperparameters. Fitting standardizes targets,
// so these live on the standardized-target scale.
struct KernelParams {
    double signal_variance = 1.0;
    Eigen::VectorXd lengthscales;  // one per input dimension
    double noise_variance = 0.0;

    void validate(int input_dim) const;  // throws std::invalid_argument
};

// k(a, b) = signal_variance * exp(-1/2 sum_d ((a_d - b_d) / l_d)^2)
double se_kernel(const Eigen::VectorXd& a, const Eigen::VectorXd& b, const KernelParams& params);

// Fitted surrogate. Immutable after fit_gp; safe to share across threads.
class GpPosterior {
public:
    // Predictive (mean, variance) at x, on the raw target scale.
    std::pair<double, double> predict(const Eigen::VectorXd& x) const;

    const Dataset& training() const { return training_; }
    const KernelParams& params() const { return params_; }
    // Lower factor L with L L^T = K + (noise_variance + jitter) I, built on
    // standardized targets.
    const Eigen::MatrixXd& chol() const { return chol_; }
    const Eigen::VectorXd& alpha() const { return alpha_; }
    double jitter() const { return jitter_; }
    double target_mean() const { return y_mean_; }
    double target_scale() const { return y_scale_; }

private:
    friend GpPosterior fit_gp(const Dataset&, const KernelParams&);

    KernelParams params_;
    Dataset training_;
    Eigen::MatrixXd chol_;
    Eigen::VectorXd alpha_;
    double jitter_ = 0.0;
    double y_mean_ = 0.0;
    double y_scale_ = 1.0;
};

GpPosterior fit_gp(const Dataset& data, const KernelParams& params);

// Log marginal likelihood of the standardized targets under `params`,
// computed through the same Cholesky path as fit_gp.
double log_marginal_likelihood(const Dataset& data, const KernelParams& params);

struct KernelBounds {
    KernelParams lower;
    KernelParams upper;
};

// Multi-start bounded ML-II search (pattern search in log space).
// Deterministic for a given seed. Needs at least 2 observations.
KernelParams optimize_hyperparameters(const Dataset& data, const KernelBounds& bounds,
                                      std::uint64_t seed, int n_starts = 6);

}  // namespace mabo
