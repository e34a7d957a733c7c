#include "mabo/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "mabo/errors.hpp"
#include "mabo/seed.hpp"

namespace mabo {

namespace {

constexpr double kRefineFrac = 1e-6;  // refinement width relative to the domain width

std::string point_to_string(const Eigen::VectorXd& x) {
    std::ostringstream os;
    os << "(";
    for (int i = 0; i < x.size(); ++i) os << (i ? ", " : "") << x[i];
    os << ")";
    return os.str();
}

double eval_grid_node(const ScalarField& f, const Eigen::VectorXd& x) {
    double v = f(x);
    if (!std::isfinite(v))
        throw NumericalError("objective is not finite at grid node " + point_to_string(x));
    return v;
}

// Golden-section search on [lo, hi]; keeps whichever evaluated point is best.
void golden_section(const ScalarField& f, double lo, double hi, double tol,
                    Eigen::VectorXd& best_x, double& best_v) {
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    Eigen::VectorXd p(1);
    auto eval1 = [&](double x) {
        p[0] = x;
        double v = f(p);
        if (std::isfinite(v) && v < best_v) {
            best_v = v;
            best_x = p;
        }
        return v;
    };
    double a = lo, b = hi;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = eval1(c), fd = eval1(d);
    while (b - a > tol) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = eval1(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = eval1(d);
        }
    }
}

// 32 Latin-hypercube points under a fixed internal seed; the whole
// minimization stays deterministic.
std::vector<Eigen::VectorXd> latin_hypercube_starts(const Box& domain, int count) {
    const int d = domain.dim();
    std::mt19937_64 rng(0x5eedf00dULL);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<std::vector<int>> perms(d);
    for (int j = 0; j < d; ++j) {
        perms[j].resize(count);
        for (int i = 0; i < count; ++i) perms[j][i] = i;
        std::shuffle(perms[j].begin(), perms[j].end(), rng);
    }
    std::vector<Eigen::VectorXd> starts(count, Eigen::VectorXd(d));
    for (int i = 0; i < count; ++i) {
        for (int j = 0; j < d; ++j) {
            double cell = (perms[j][i] + unit(rng)) / count;
            starts[i][j] = domain.lower[j] + cell * (domain.upper[j] - domain.lower[j]);
        }
    }
    return starts;
}

}  // namespace

int grid_nodes_per_dim(int dim) {
    switch (dim) {
        case 1: return 2001;
        case 2: return 45;
        case 3: return 13;
        default: throw std::invalid_argument("grid_nodes_per_dim: unsupported dimension");
    }
}

Eigen::VectorXd pattern_search(const ScalarField& f, const Box& domain, Eigen::VectorXd start,
                               Eigen::VectorXd step, const Eigen::VectorXd& tol,
                               double* value_out) {
    const int d = domain.dim();
    Eigen::VectorXd x = domain.clip(std::move(start));
    double v = f(x);
    const int max_sweeps = 500;
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        bool improved = false;
        for (int j = 0; j < d; ++j) {
            if (domain.upper[j] - domain.lower[j] <= 0.0) continue;
            for (double sign : {1.0, -1.0}) {
                Eigen::VectorXd y = x;
                y[j] = std::clamp(x[j] + sign * step[j], domain.lower[j], domain.upper[j]);
                if (y[j] == x[j]) continue;
                double w = f(y);
                if (std::isfinite(w) && w < v) {
                    v = w;
                    x = y;
                    improved = true;
                }
            }
        }
        if (!improved) {
            step *= 0.5;
            if ((step.array() <= tol.array()).all()) break;
        }
    }
    if (value_out) *value_out = v;
    return x;
}

BoxMinimum minimize_on_box(const ScalarField& f, const Box& domain, long nodes_override) {
    const int d = domain.dim();
    if (d < 1 || d > 3) throw std::invalid_argument("minimize_on_box: only 1 to 3 dimensions supported");

    BoxMinimum out;
    if (d == 1) {
        const long nodes = nodes_override > 0 ? nodes_override : grid_nodes_per_dim(1);
        const double lo = domain.lower[0], hi = domain.upper[0];
        const double width = hi - lo;
        const double h = width / static_cast<double>(nodes - 1);
        Eigen::VectorXd p(1);
        long best_i = 0;
        double best_v = std::numeric_limits<double>::infinity();
        for (long i = 0; i < nodes; ++i) {
            p[0] = (i == nodes - 1) ? hi : lo + h * static_cast<double>(i);
            double v = eval_grid_node(f, p);
            if (v < best_v) {
                best_v = v;
                best_i = i;
            }
        }
        out.grid_argmin = Eigen::VectorXd(1);
        out.grid_argmin[0] = (best_i == nodes - 1) ? hi : lo + h * static_cast<double>(best_i);
        out.grid_value = best_v;
        out.argmin = out.grid_argmin;
        out.value = best_v;
        double a = std::max(lo, out.grid_argmin[0] - h);
        double b = std::min(hi, out.grid_argmin[0] + h);
        golden_section(f, a, b, kRefineFrac * width, out.argmin, out.value);
        return out;
    }

    // dense tensor grid
    const int nodes = grid_nodes_per_dim(d);
    Eigen::VectorXd widths = domain.widths();
    Eigen::VectorXd p(d);
    std::vector<int> idx(d, 0);
    double best_v = std::numeric_limits<double>::infinity();
    Eigen::VectorXd best_x = domain.midpoint();
    while (true) {
        for (int j = 0; j < d; ++j)
            p[j] = domain.lower[j] + widths[j] * static_cast<double>(idx[j]) / (nodes - 1);
        double v = eval_grid_node(f, p);
        if (v < best_v) {
            best_v = v;
            best_x = p;
        }
        int j = 0;
        while (j < d && ++idx[j] == nodes) idx[j++] = 0;
        if (j == d) break;
    }
    out.grid_argmin = best_x;
    out.grid_value = best_v;
    out.argmin = best_x;
    out.value = best_v;

    // multi-start local refinement
    std::vector<Eigen::VectorXd> starts = latin_hypercube_starts(domain, 32);
    starts.push_back(best_x);
    Eigen::VectorXd tol = kRefineFrac * widths;
    for (const auto& s : starts) {
        double v = 0.0;
        Eigen::VectorXd x = pattern_search(f, domain, s, widths / 8.0, tol, &v);
        if (v < out.value) {
            out.value = v;
            out.argmin = x;
        }
    }
    return out;
}

}  // namespace mabo
