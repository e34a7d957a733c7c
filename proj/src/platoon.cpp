#include "mabo/platoon.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

#include "mabo/errors.hpp"
#include "mabo/optimize.hpp"

namespace mabo {

double fuel_consumption(const FuelModel& m, double speed_kmh) {
    if (!(speed_kmh > 0.0))
        throw std::invalid_argument("fuel_consumption: speed must be > 0 km/h");
    return m.a + m.b / speed_kmh + m.c * speed_kmh + m.d * speed_kmh * speed_kmh;
}

namespace {

// A model is accepted when it is finite and unimodal on the domain: no rise
// followed by a later fall across a dense scan.
bool has_unique_minimum(const FuelModel& m, const Box& domain) {
    const int nodes = 2049;
    const double lo = domain.lower[0], hi = domain.upper[0];
    double prev = fuel_consumption(m, lo);
    if (!std::isfinite(prev)) return false;
    double scale = std::abs(prev);
    bool rising = false;
    for (int i = 1; i < nodes; ++i) {
        double x = lo + (hi - lo) * static_cast<double>(i) / (nodes - 1);
        double v = fuel_consumption(m, x);
        if (!std::isfinite(v)) return false;
        scale = std::max(scale, std::abs(v));
        double tol = 1e-12 * std::max(scale, 1.0);
        if (v > prev + tol) rising = true;
        if (rising && v < prev - tol) return false;
        prev = v;
    }
    return true;
}

}  // namespace

std::vector<FuelModel> sample_fleet(const FleetConfig& cfg) {
    if (cfg.n_vehicles < 1) throw std::invalid_argument("sample_fleet: n_vehicles must be >= 1");
    if (!(cfg.perturbation >= 0.0 && cfg.perturbation < 1.0))
        throw std::invalid_argument("sample_fleet: perturbation must be in [0, 1)");
    if (cfg.speed_domain.dim() != 1)
        throw std::invalid_argument("sample_fleet: speed domain must be 1-D");
    if (!(cfg.speed_domain.lower[0] > 0.0))
        throw std::invalid_argument("sample_fleet: speeds must be positive");

    std::mt19937_64 rng(cfg.seed);
    auto draw = [&](double nominal) {
        double a = (1.0 - cfg.perturbation) * nominal;
        double b = (1.0 + cfg.perturbation) * nominal;
        std::uniform_real_distribution<double> u(std::min(a, b), std::max(a, b));
        return u(rng);
    };

    const int max_retries = 100;
    std::vector<FuelModel> fleet;
    fleet.reserve(cfg.n_vehicles);
    for (int i = 0; i < cfg.n_vehicles; ++i) {
        FuelModel m;
        int tries = 0;
        do {
            m = FuelModel{draw(cfg.nominal.a), draw(cfg.nominal.b), draw(cfg.nominal.c),
                          draw(cfg.nominal.d)};
            if (++tries > max_retries)
                throw NumericalError("sample_fleet: vehicle " + std::to_string(i) +
                                     " had no unique minimum after " +
                                     std::to_string(max_retries) + " redraws");
        } while (!has_unique_minimum(m, cfg.speed_domain));
        fleet.push_back(m);
    }
    return fleet;
}

std::pair<double, double> true_platoon_optimum(const std::vector<FuelModel>& models,
                                               const Box& domain) {
    if (models.empty()) throw std::invalid_argument("true_platoon_optimum: no models");
    if (domain.dim() != 1) throw std::invalid_argument("true_platoon_optimum: domain must be 1-D");
    ScalarField total = [&](const Eigen::VectorXd& x) {
        double s = 0.0;
        for (const auto& m : models) s += fuel_consumption(m, x[0]);
        return s;
    };
    BoxMinimum best = minimize_on_box(total, domain, 1000001);
    return {best.argmin[0], best.value};
}

FuelModel default_nominal() { return FuelModel{178.0, 154000.0, -1.76, 0.4312}; }

Box default_speed_domain() { return Box::interval(40.0, 90.0); }

}  // namespace mabo
