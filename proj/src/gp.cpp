#include "mabo/gp.hpp"

#include <Eigen/Cholesky>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>

#include "mabo/box.hpp"
#include "mabo/optimize.hpp"

namespace mabo {

void Dataset::append(Eigen::VectorXd x, double y) {
    if (!xs_.empty() && x.size() != xs_.front().size())
        throw std::invalid_argument("Dataset::append: dimension mismatch");
    if (x.size() == 0) throw std::invalid_argument("Dataset::append: empty point");
    xs_.push_back(std::move(x));
    ys_.push_back(y);
}

double Dataset::min_y() const {
    if (ys_.empty()) throw std::invalid_argument("Dataset::min_y: empty dataset");
    return *std::min_element(ys_.begin(), ys_.end());
}

void KernelParams::validate(int input_dim) const {
    if (!(signal_variance > 0.0))
        throw std::invalid_argument("KernelParams: signal_variance must be > 0");
    if (lengthscales.size() != input_dim)
        throw std::invalid_argument("KernelParams: expected " + std::to_string(input_dim) +
                                    " lengthscales, got " + std::to_string(lengthscales.size()));
    for (int i = 0; i < lengthscales.size(); ++i) {
        if (!(lengthscales[i] > 0.0))
            throw std::invalid_argument("KernelParams: lengthscales must be > 0");
    }
    if (!(noise_variance >= 0.0))
        throw std::invalid_argument("KernelParams: noise_variance must be >= 0");
}

double se_kernel(const Eigen::VectorXd& a, const Eigen::VectorXd& b, const KernelParams& params) {
    if (a.size() != b.size() || a.size() != params.lengthscales.size())
        throw std::invalid_argument("se_kernel: dimension mismatch");
    double r2 = 0.0;
    for (int i = 0; i < a.size(); ++i) {
        double t = (a[i] - b[i]) / params.lengthscales[i];
        r2 += t * t;
    }
    return params.signal_variance * std::exp(-0.5 * r2);
}

namespace {

struct Factorization {
    Eigen::MatrixXd chol;   // L with L L^T = K + (noise + jitter) I
    Eigen::VectorXd alpha;  // (K + (noise + jitter) I)^{-1} z
    Eigen::VectorXd z;      // standardized targets
    double jitter = 0.0;
    double y_mean = 0.0;
    double y_scale = 1.0;
};

// Standardize targets, build the kernel matrix and factorize it, escalating
// jitter from 1e-10 to 1e-4 of the mean kernel diagonal.
Factorization factorize(const Dataset& data, const KernelParams& params) {
    const int n = static_cast<int>(data.size());
    if (n == 0) throw std::invalid_argument("gp: dataset is empty");
    params.validate(data.dim());

    Factorization out;
    double sum = 0.0;
    for (int i = 0; i < n; ++i) sum += data.y(i);
    out.y_mean = sum / n;
    double ss = 0.0;
    for (int i = 0; i < n; ++i) {
        double dy = data.y(i) - out.y_mean;
        ss += dy * dy;
    }
    out.y_scale = std::sqrt(ss / n);
    if (out.y_scale < 1e-12) out.y_scale = 1.0;

    out.z.resize(n);
    for (int i = 0; i < n; ++i) out.z[i] = (data.y(i) - out.y_mean) / out.y_scale;

    Eigen::MatrixXd K(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j <= i; ++j) {
            double v = se_kernel(data.x(i), data.x(j), params);
            K(i, j) = v;
            K(j, i) = v;
        }
    }
    const double diag_mean = K.trace() / n;

    Eigen::LLT<Eigen::MatrixXd> llt;
    for (int e = -10; e <= -4; ++e) {
        out.jitter = std::pow(10.0, e) * diag_mean;
        Eigen::MatrixXd reg = K;
        reg.diagonal().array() += params.noise_variance + out.jitter;
        llt.compute(reg);
        if (llt.info() == Eigen::Success) {
            out.chol = llt.matrixL();
            out.alpha = llt.solve(out.z);
            return out;
        }
    }
    throw NumericalError("gp: Cholesky factorization failed; last jitter attempted " +
                         std::to_string(out.jitter));
}

}  // namespace

GpPosterior fit_gp(const Dataset& data, const KernelParams& params) {
    Factorization fac = factorize(data, params);
    GpPosterior post;
    post.params_ = params;
    post.training_ = data;
    post.chol_ = std::move(fac.chol);
    post.alpha_ = std::move(fac.alpha);
    post.jitter_ = fac.jitter;
    post.y_mean_ = fac.y_mean;
    post.y_scale_ = fac.y_scale;
    return post;
}

std::pair<double, double> GpPosterior::predict(const Eigen::VectorXd& x) const {
    const int n = static_cast<int>(training_.size());
    if (x.size() != training_.dim())
        throw std::invalid_argument("GpPosterior::predict: dimension mismatch");
    Eigen::VectorXd ks(n);
    for (int i = 0; i < n; ++i) ks[i] = se_kernel(x, training_.x(i), params_);
    double mean = ks.dot(alpha_);
    Eigen::VectorXd v = chol_.triangularView<Eigen::Lower>().solve(ks);
    double var = se_kernel(x, x, params_) - v.squaredNorm();
    if (var < 0.0) {
        // round-off from the factorized path; anything worse is a bug
        if (var >= -1e-10) {
            var = 0.0;
        } else {
            throw NumericalError("GpPosterior::predict: variance " + std::to_string(var) +
                                 " is below the round-off tolerance");
        }
    }
    return {y_mean_ + y_scale_ * mean, y_scale_ * y_scale_ * var};
}

double log_marginal_likelihood(const Dataset& data, const KernelParams& params) {
    Factorization fac = factorize(data, params);
    const int n = static_cast<int>(data.size());
    double log_det_half = 0.0;
    for (int i = 0; i < n; ++i) log_det_half += std::log(fac.chol(i, i));
    return -0.5 * fac.z.dot(fac.alpha) - log_det_half - 0.5 * n * std::log(2.0 * std::numbers::pi);
}

KernelParams optimize_hyperparameters(const Dataset& data, const KernelBounds& bounds,
                                      std::uint64_t seed, int n_starts) {
    if (data.size() < 2)
        throw std::invalid_argument("optimize_hyperparameters: need at least 2 observations");
    const int dim = data.dim();
    bounds.lower.validate(dim);
    bounds.upper.validate(dim);
    if (n_starts < 1) throw std::invalid_argument("optimize_hyperparameters: n_starts must be >= 1");

    // search in log space: [signal_variance, lengthscales..., noise_variance]
    const int np = dim + 2;
    Eigen::VectorXd lo(np), hi(np);
    lo[0] = std::log(bounds.lower.signal_variance);
    hi[0] = std::log(bounds.upper.signal_variance);
    for (int d = 0; d < dim; ++d) {
        lo[1 + d] = std::log(bounds.lower.lengthscales[d]);
        hi[1 + d] = std::log(bounds.upper.lengthscales[d]);
    }
    const double noise_floor = 1e-12;  // keeps zero noise representable in log space
    lo[np - 1] = std::log(std::max(bounds.lower.noise_variance, noise_floor));
    hi[np - 1] = std::log(std::max(bounds.upper.noise_variance, noise_floor));
    for (int i = 0; i < np; ++i) {
        if (lo[i] > hi[i])
            throw std::invalid_argument("optimize_hyperparameters: empty bounds");
        if (lo[i] == hi[i]) hi[i] = lo[i] + 1e-15;  // Box requires lower < upper
    }
    Box log_box(lo, hi);

    auto unpack = [&](const Eigen::VectorXd& p) {
        KernelParams kp;
        kp.signal_variance = std::exp(p[0]);
        kp.lengthscales.resize(dim);
        for (int d = 0; d < dim; ++d) kp.lengthscales[d] = std::exp(p[1 + d]);
        kp.noise_variance = std::exp(p[np - 1]);
        return kp;
    };
    ScalarField objective = [&](const Eigen::VectorXd& p) {
        try {
            return -log_marginal_likelihood(data, unpack(p));
        } catch (const NumericalError&) {
            return std::numeric_limits<double>::infinity();
        }
    };

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<Eigen::VectorXd> starts;
    starts.push_back(log_box.midpoint());
    for (int s = 1; s < n_starts; ++s) {
        Eigen::VectorXd p(np);
        for (int i = 0; i < np; ++i) p[i] = lo[i] + (hi[i] - lo[i]) * unit(rng);
        starts.push_back(p);
    }

    Eigen::VectorXd widths = log_box.widths();
    Eigen::VectorXd tol = widths / 512.0;
    Eigen::VectorXd best_p = starts.front();
    double best_v = std::numeric_limits<double>::infinity();
    for (const auto& s : starts) {
        double v = 0.0;
        Eigen::VectorXd p = pattern_search(objective, log_box, s, widths / 8.0, tol, &v);
        if (v < best_v) {
            best_v = v;
            best_p = p;
        }
    }
    if (!std::isfinite(best_v))
        throw NumericalError("optimize_hyperparameters: likelihood not finite anywhere searched");
    return unpack(best_p);
}

}  // namespace mabo
