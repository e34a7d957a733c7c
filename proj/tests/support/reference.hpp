// Independent reference implementations used as test oracles. These
// deliberately avoid the library's factorized code paths: matrices are
// inverted by hand with Gauss-Jordan elimination on plain vectors.
#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include "mabo/gp.hpp"

namespace ref {

using Matrix = std::vector<std::vector<double>>;

inline Matrix identity(std::size_t n) {
    Matrix m(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) m[i][i] = 1.0;
    return m;
}

// Gauss-Jordan inverse with partial pivoting.
inline Matrix invert(Matrix a) {
    const std::size_t n = a.size();
    Matrix inv = identity(n);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < n; ++r) {
            if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
        }
        if (a[pivot][col] == 0.0) throw std::runtime_error("ref::invert: singular matrix");
        std::swap(a[pivot], a[col]);
        std::swap(inv[pivot], inv[col]);
        const double d = a[col][col];
        for (std::size_t j = 0; j < n; ++j) {
            a[col][j] /= d;
            inv[col][j] /= d;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col) continue;
            const double f = a[r][col];
            if (f == 0.0) continue;
            for (std::size_t j = 0; j < n; ++j) {
                a[r][j] -= f * a[col][j];
                inv[r][j] -= f * inv[col][j];
            }
        }
    }
    return inv;
}

// log(det) by Gaussian elimination (assumes positive determinant).
inline double log_det(Matrix a) {
    const std::size_t n = a.size();
    double ld = 0.0;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < n; ++r) {
            if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
        }
        if (pivot != col) std::swap(a[pivot], a[col]);  // det sign flips, magnitude unchanged
        if (a[col][col] == 0.0) throw std::runtime_error("ref::log_det: singular matrix");
        ld += std::log(std::abs(a[col][col]));
        for (std::size_t r = col + 1; r < n; ++r) {
            const double f = a[r][col] / a[col][col];
            for (std::size_t j = col; j < n; ++j) a[r][j] -= f * a[col][j];
        }
    }
    return ld;
}

// Regularized kernel matrix K + (noise + jitter) I as plain rows.
inline Matrix kernel_matrix(const mabo::Dataset& data, const mabo::KernelParams& params,
                            double jitter) {
    const std::size_t n = data.size();
    Matrix k(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) k[i][j] = mabo::se_kernel(data.x(i), data.x(j), params);
        k[i][i] += params.noise_variance + jitter;
    }
    return k;
}

struct Standardized {
    std::vector<double> z;
    double mean = 0.0;
    double scale = 1.0;
};

// Mirrors the library's target standardization (population std, guarded).
inline Standardized standardize(const mabo::Dataset& data) {
    Standardized out;
    const std::size_t n = data.size();
    for (std::size_t i = 0; i < n; ++i) out.mean += data.y(i);
    out.mean /= static_cast<double>(n);
    double ss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double d = data.y(i) - out.mean;
        ss += d * d;
    }
    out.scale = std::sqrt(ss / static_cast<double>(n));
    if (out.scale < 1e-12) out.scale = 1.0;
    out.z.resize(n);
    for (std::size_t i = 0; i < n; ++i) out.z[i] = (data.y(i) - out.mean) / out.scale;
    return out;
}

// Dense-inverse GP prediction: the O(n^3) direct computation of the
// predictive mean and variance, matching the library's standardization and
// the jitter it actually applied.
inline std::pair<double, double> dense_predict(const mabo::Dataset& data,
                                               const mabo::KernelParams& params, double jitter,
                                               const Eigen::VectorXd& x) {
    const std::size_t n = data.size();
    Standardized st = standardize(data);
    Matrix kinv = invert(kernel_matrix(data, params, jitter));
    std::vector<double> ks(n);
    for (std::size_t i = 0; i < n; ++i) ks[i] = mabo::se_kernel(x, data.x(i), params);
    double mean = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) mean += ks[i] * kinv[i][j] * st.z[j];
    }
    double quad = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) quad += ks[i] * kinv[i][j] * ks[j];
    }
    double var = mabo::se_kernel(x, x, params) - quad;
    if (var < 0.0) var = 0.0;
    return {st.mean + st.scale * mean, st.scale * st.scale * var};
}

// Dense multivariate Gaussian log-density of the standardized targets under
// N(0, K + (noise + jitter) I).
inline double dense_log_marginal(const mabo::Dataset& data, const mabo::KernelParams& params,
                                 double jitter) {
    const std::size_t n = data.size();
    Standardized st = standardize(data);
    Matrix k = kernel_matrix(data, params, jitter);
    Matrix kinv = invert(k);
    double quad = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) quad += st.z[i] * kinv[i][j] * st.z[j];
    }
    return -0.5 * quad - 0.5 * log_det(k) -
           0.5 * static_cast<double>(n) * std::log(2.0 * 3.14159265358979323846);
}

// Monte-Carlo estimates of EI and PI in minimization convention, with the
// standard error of the estimate.
struct McAcquisition {
    double value = 0.0;
    double std_error = 0.0;
};

inline McAcquisition mc_expected_improvement(double mean, double stddev, double f_best, double xi,
                                             std::uint64_t seed, std::size_t samples) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(mean, stddev);
    double sum = 0.0, sum_sq = 0.0;
    for (std::size_t i = 0; i < samples; ++i) {
        const double imp = std::max(f_best - xi - gauss(rng), 0.0);
        sum += imp;
        sum_sq += imp * imp;
    }
    const double n = static_cast<double>(samples);
    const double m = sum / n;
    const double var = std::max(sum_sq / n - m * m, 0.0);
    return {-m, std::sqrt(var / n)};
}

inline McAcquisition mc_probability_of_improvement(double mean, double stddev, double f_best,
                                                   double xi, std::uint64_t seed,
                                                   std::size_t samples) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(mean, stddev);
    std::size_t hits = 0;
    for (std::size_t i = 0; i < samples; ++i) {
        if (gauss(rng) < f_best - xi) ++hits;
    }
    const double n = static_cast<double>(samples);
    const double p = static_cast<double>(hits) / n;
    return {-p, std::sqrt(std::max(p * (1.0 - p), 1e-12) / n)};
}

// Central finite differences of a scalar field.
template <typename F>
Eigen::VectorXd finite_difference_gradient(const F& f, const Eigen::VectorXd& x, double h) {
    Eigen::VectorXd g(x.size());
    for (int i = 0; i < x.size(); ++i) {
        Eigen::VectorXd hi = x, lo = x;
        hi[i] += h;
        lo[i] -= h;
        g[i] = (f(hi) - f(lo)) / (2.0 * h);
    }
    return g;
}

// Brute-force 1-D grid minimizer.
template <typename F>
double grid_argmin_1d(const F& f, double lo, double hi, long nodes) {
    double best_x = lo, best_v = f(lo);
    for (long i = 1; i < nodes; ++i) {
        const double x = lo + (hi - lo) * static_cast<double>(i) / (nodes - 1);
        const double v = f(x);
        if (v < best_v) {
            best_v = v;
            best_x = x;
        }
    }
    return best_x;
}

}  // namespace ref
