#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "mabo/box.hpp"

namespace mabo {

// Per-vehicle fuel consumption f(x) = a + b/x + c x + d x^2 with speed x in
// km/h and f in g/veh-km.
struct FuelModel {
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;
    double d = 0.0;
};

double fuel_consumption(const FuelModel& m, double speed_kmh);

struct FleetConfig {
    FuelModel nominal;
    int n_vehicles = 7;
    double perturbation = 0.20;  // each parameter drawn uniformly within +-20%
    Box speed_domain;            // 1-D, strictly positive speeds
    std::uint64_t seed = 0;
};

// Draw n_vehicles models with each parameter uniform in
// [(1-p) nominal, (1+p) nominal]. Models without a unique minimum on the
// speed domain are redrawn (bounded retries). Deterministic under seed.
std::vector<FuelModel> sample_fleet(const FleetConfig& cfg);

// Brute-force minimizer of the summed fleet cost: dense grid (1e6 intervals)
// plus golden-section refinement; resolution well under 1e-4 km/h.
std::pair<double, double> true_platoon_optimum(const std::vector<FuelModel>& models,
                                               const Box& domain);

// Stand-in nominal calibration. Not taken from any published dataset; chosen
// so the fleet optimum sits near 57 km/h and consensus ADMM with rho = 10
// settles well inside a 30-iteration budget.
FuelModel default_nominal();
Box default_speed_domain();  // [40, 90] km/h

}  // namespace mabo
