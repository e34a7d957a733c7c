#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mabo/errors.hpp"
#include "mabo/platoon.hpp"
#include "mabo/runtime.hpp"

namespace mabo {

// Run-config schema version accepted by the parser.
inline constexpr const char* kConfigSchema = "mabo/1";

enum class OracleType { platoon, functions, custom };

// Named built-in test functions usable as local costs.
struct FunctionSpec {
    enum class Kind { quadratic, constant };
    Kind kind = Kind::quadratic;
    Eigen::VectorXd center;  // quadratic: scale * ||x - center||^2
    double scale = 1.0;
    double value = 0.0;  // constant
};

struct OracleConfig {
    OracleType type = OracleType::platoon;
    // platoon source
    FleetConfig fleet;
    bool fleet_seed_explicit = false;
    std::vector<FuelModel> vehicles;  // explicit fleet, bypasses sampling
    bool has_vehicles = false;
    // functions source
    std::vector<FunctionSpec> functions;
};

struct FullConfig {
    RunConfig run;
    OracleConfig oracle;

    // Re-seeds the run (CLI --seed override). A defaulted fleet seed is
    // re-derived; an explicit one is kept.
    void set_seed(std::uint64_t seed);
};

// Parse + validate. Throw ConfigError with the offending field path.
FullConfig parse_config(const std::string& json_text);
FullConfig load_config_file(const std::string& path);  // std::runtime_error on I/O failure

// Local cost evaluators for platoon / functions sources; throws
// std::invalid_argument for custom configs (costs arrive via callback there).
std::vector<Oracle> build_oracles(const FullConfig& cfg);

bool oracle_models_known(const FullConfig& cfg);

// Brute-force optimum of the summed local costs, available for 1-D configs
// with known models.
std::optional<std::pair<double, double>> known_optimum(const FullConfig& cfg);

}  // namespace mabo
