#include "mabo/config.hpp"

#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "mabo/optimize.hpp"
#include "mabo/seed.hpp"

namespace mabo {

namespace {

using nlohmann::json;

// Stream id for a defaulted fleet seed (separate from agent streams).
constexpr std::uint64_t kStreamFleet = 0xF1EE7;

[[noreturn]] void fail(const std::string& path, const std::string& what) {
    throw ConfigError(path, what);
}

const json& require(const json& obj, const std::string& path, const std::string& key) {
    if (!obj.is_object()) fail(path, "expected an object");
    auto it = obj.find(key);
    if (it == obj.end()) fail(path.empty() ? key : path + "." + key, "missing required field");
    return *it;
}

std::string join(const std::string& path, const std::string& key) {
    return path.empty() ? key : path + "." + key;
}

double as_number(const json& v, const std::string& path) {
    if (!v.is_number()) fail(path, "expected a number");
    return v.get<double>();
}

std::string as_string(const json& v, const std::string& path) {
    if (!v.is_string()) fail(path, "expected a string");
    return v.get<std::string>();
}

long as_integer(const json& v, const std::string& path) {
    if (!v.is_number_integer()) fail(path, "expected an integer");
    return v.get<long>();
}

std::uint64_t as_seed(const json& v, const std::string& path) {
    if (!v.is_number_unsigned() && !v.is_number_integer()) fail(path, "expected an integer seed");
    if (v.is_number_integer() && v.get<long long>() < 0) fail(path, "seed must be >= 0");
    return v.get<std::uint64_t>();
}

Eigen::VectorXd as_vector(const json& v, const std::string& path) {
    if (v.is_number()) {
        Eigen::VectorXd out(1);
        out[0] = v.get<double>();
        return out;
    }
    if (!v.is_array() || v.empty()) fail(path, "expected a number or a non-empty array");
    Eigen::VectorXd out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        out[static_cast<int>(i)] = as_number(v[i], path + "[" + std::to_string(i) + "]");
    return out;
}

AcquisitionSpec parse_acquisition(const json& v, const std::string& path) {
    AcquisitionSpec spec;
    std::string kind = as_string(require(v, path, "kind"), join(path, "kind"));
    if (kind == "lcb") {
        spec.kind = AcquisitionKind::lcb;
    } else if (kind == "ei") {
        spec.kind = AcquisitionKind::ei;
    } else if (kind == "pi") {
        spec.kind = AcquisitionKind::pi;
    } else if (kind == "greedy_mean") {
        spec.kind = AcquisitionKind::greedy_mean;
    } else {
        fail(join(path, "kind"), "must be one of lcb, ei, pi, greedy_mean");
    }
    if (v.contains("beta")) {
        spec.beta = as_number(v["beta"], join(path, "beta"));
        if (!(spec.beta > 0.0)) fail(join(path, "beta"), "must be > 0");
    }
    if (v.contains("xi")) {
        spec.xi = as_number(v["xi"], join(path, "xi"));
        if (!(spec.xi >= 0.0)) fail(join(path, "xi"), "must be >= 0");
    }
    return spec;
}

FuelModel parse_fuel_model(const json& v, const std::string& path) {
    FuelModel m;
    m.a = as_number(require(v, path, "a"), join(path, "a"));
    m.b = as_number(require(v, path, "b"), join(path, "b"));
    m.c = as_number(require(v, path, "c"), join(path, "c"));
    m.d = as_number(require(v, path, "d"), join(path, "d"));
    return m;
}

FunctionSpec parse_function(const json& v, const std::string& path, int dim) {
    FunctionSpec fs;
    std::string kind = as_string(require(v, path, "kind"), join(path, "kind"));
    if (kind == "quadratic") {
        fs.kind = FunctionSpec::Kind::quadratic;
        fs.center = as_vector(require(v, path, "center"), join(path, "center"));
        if (fs.center.size() != dim) fail(join(path, "center"), "dimension does not match domain");
        if (v.contains("scale")) fs.scale = as_number(v["scale"], join(path, "scale"));
    } else if (kind == "constant") {
        fs.kind = FunctionSpec::Kind::constant;
        fs.value = as_number(require(v, path, "value"), join(path, "value"));
    } else {
        fail(join(path, "kind"), "must be one of quadratic, constant");
    }
    return fs;
}

}  // namespace

void FullConfig::set_seed(std::uint64_t seed) {
    run.seed = seed;
    if (!oracle.fleet_seed_explicit) oracle.fleet.seed = derive_seed(seed, kStreamFleet);
}

FullConfig parse_config(const std::string& json_text) {
    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::parse_error& e) {
        fail("<document>", std::string("not valid JSON: ") + e.what());
    }
    if (!root.is_object()) fail("<document>", "top level must be an object");

    std::string schema = as_string(require(root, "", "schema"), "schema");
    if (schema != kConfigSchema)
        fail("schema", "unsupported schema \"" + schema + "\" (expected \"" +
                           std::string(kConfigSchema) + "\")");

    FullConfig cfg;
    RunConfig& run = cfg.run;

    run.n_agents = static_cast<int>(as_integer(require(root, "", "n_agents"), "n_agents"));
    if (run.n_agents < 1) fail("n_agents", "must be >= 1");

    const json& dom = require(root, "", "domain");
    Eigen::VectorXd lower = as_vector(require(dom, "domain", "lower"), "domain.lower");
    Eigen::VectorXd upper = as_vector(require(dom, "domain", "upper"), "domain.upper");
    if (lower.size() != upper.size()) fail("domain", "lower and upper sizes differ");
    for (int i = 0; i < lower.size(); ++i) {
        if (!(lower[i] < upper[i])) fail("domain", "lower must be strictly below upper");
    }
    run.domain = Box(lower, upper);

    run.rho = as_number(require(root, "", "rho"), "rho");
    if (!(run.rho > 0.0)) fail("rho", "must be > 0");

    run.max_admm_iters =
        static_cast<int>(as_integer(require(root, "", "max_admm_iters"), "max_admm_iters"));
    if (run.max_admm_iters < 1) fail("max_admm_iters", "must be >= 1");

    run.seed = as_seed(require(root, "", "seed"), "seed");

    if (root.contains("n0")) {
        run.n0 = static_cast<int>(as_integer(root["n0"], "n0"));
        if (run.n0 < 1) fail("n0", "must be >= 1");
    }
    if (root.contains("noise_std")) {
        run.noise_std = as_number(root["noise_std"], "noise_std");
        if (!(run.noise_std >= 0.0)) fail("noise_std", "must be >= 0");
    }
    if (root.contains("parallel_agents")) {
        if (!root["parallel_agents"].is_boolean()) fail("parallel_agents", "expected a boolean");
        run.parallel_agents = root["parallel_agents"].get<bool>();
    }

    const json& acq = require(root, "", "acquisitions");
    if (acq.is_array()) {
        if (static_cast<int>(acq.size()) != run.n_agents)
            fail("acquisitions", "expected one entry per agent");
        for (std::size_t i = 0; i < acq.size(); ++i)
            run.acquisitions.push_back(
                parse_acquisition(acq[i], "acquisitions[" + std::to_string(i) + "]"));
    } else {
        run.acquisitions.assign(run.n_agents, parse_acquisition(acq, "acquisitions"));
    }

    if (root.contains("inner_iters")) {
        const json& ji = root["inner_iters"];
        if (ji.is_array()) {
            if (static_cast<int>(ji.size()) != run.n_agents)
                fail("inner_iters", "expected one entry per agent");
            for (std::size_t i = 0; i < ji.size(); ++i) {
                long v = as_integer(ji[i], "inner_iters[" + std::to_string(i) + "]");
                if (v < 1) fail("inner_iters[" + std::to_string(i) + "]", "must be >= 1");
                run.inner_iters.push_back(static_cast<int>(v));
            }
        } else {
            long v = as_integer(ji, "inner_iters");
            if (v < 1) fail("inner_iters", "must be >= 1");
            run.inner_iters.assign(run.n_agents, static_cast<int>(v));
        }
    } else {
        run.inner_iters.assign(run.n_agents, 1);
    }

    if (root.contains("gp")) {
        const json& gp = root["gp"];
        std::string mode = as_string(require(gp, "gp", "mode"), "gp.mode");
        if (mode == "refit") {
            run.hyper_mode = HyperMode::refit;
        } else if (mode == "fixed") {
            run.hyper_mode = HyperMode::fixed;
            KernelParams kp;
            kp.signal_variance =
                as_number(require(gp, "gp", "signal_variance"), "gp.signal_variance");
            kp.lengthscales = as_vector(require(gp, "gp", "lengthscales"), "gp.lengthscales");
            kp.noise_variance =
                as_number(require(gp, "gp", "noise_variance"), "gp.noise_variance");
            if (kp.lengthscales.size() != run.domain.dim())
                fail("gp.lengthscales", "dimension does not match domain");
            if (!(kp.signal_variance > 0.0)) fail("gp.signal_variance", "must be > 0");
            for (int i = 0; i < kp.lengthscales.size(); ++i) {
                if (!(kp.lengthscales[i] > 0.0)) fail("gp.lengthscales", "must be > 0");
            }
            if (!(kp.noise_variance >= 0.0)) fail("gp.noise_variance", "must be >= 0");
            run.fixed_params = kp;
        } else {
            fail("gp.mode", "must be refit or fixed");
        }
    }

    const json& oracle = require(root, "", "oracle");
    std::string type = as_string(require(oracle, "oracle", "type"), "oracle.type");
    if (type == "platoon") {
        cfg.oracle.type = OracleType::platoon;
        if (run.domain.dim() != 1) fail("domain", "platoon configs need a 1-D speed domain");
        if (!(run.domain.lower[0] > 0.0)) fail("domain.lower", "speeds must be positive");
        FleetConfig& fleet = cfg.oracle.fleet;
        fleet.nominal = oracle.contains("nominal")
                            ? parse_fuel_model(oracle["nominal"], "oracle.nominal")
                            : default_nominal();
        fleet.n_vehicles = run.n_agents;
        if (oracle.contains("perturbation")) {
            fleet.perturbation = as_number(oracle["perturbation"], "oracle.perturbation");
            if (!(fleet.perturbation >= 0.0 && fleet.perturbation < 1.0))
                fail("oracle.perturbation", "must be in [0, 1)");
        }
        fleet.speed_domain = run.domain;
        if (oracle.contains("fleet_seed")) {
            fleet.seed = as_seed(oracle["fleet_seed"], "oracle.fleet_seed");
            cfg.oracle.fleet_seed_explicit = true;
        } else {
            fleet.seed = derive_seed(run.seed, kStreamFleet);
        }
        if (oracle.contains("vehicles")) {
            const json& vs = oracle["vehicles"];
            if (!vs.is_array() || static_cast<int>(vs.size()) != run.n_agents)
                fail("oracle.vehicles", "expected one fuel model per agent");
            for (std::size_t i = 0; i < vs.size(); ++i)
                cfg.oracle.vehicles.push_back(
                    parse_fuel_model(vs[i], "oracle.vehicles[" + std::to_string(i) + "]"));
            cfg.oracle.has_vehicles = true;
        }
    } else if (type == "functions") {
        cfg.oracle.type = OracleType::functions;
        const json& fns = require(oracle, "oracle", "functions");
        if (fns.is_array()) {
            if (static_cast<int>(fns.size()) != run.n_agents)
                fail("oracle.functions", "expected one function per agent");
            for (std::size_t i = 0; i < fns.size(); ++i)
                cfg.oracle.functions.push_back(parse_function(
                    fns[i], "oracle.functions[" + std::to_string(i) + "]", run.domain.dim()));
        } else {
            cfg.oracle.functions.assign(
                run.n_agents, parse_function(fns, "oracle.functions", run.domain.dim()));
        }
    } else if (type == "custom") {
        cfg.oracle.type = OracleType::custom;
    } else {
        fail("oracle.type", "must be one of platoon, functions, custom");
    }

    run.validate();
    return cfg;
}

FullConfig load_config_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

std::vector<Oracle> build_oracles(const FullConfig& cfg) {
    std::vector<Oracle> out;
    switch (cfg.oracle.type) {
        case OracleType::platoon: {
            std::vector<FuelModel> fleet =
                cfg.oracle.has_vehicles ? cfg.oracle.vehicles : sample_fleet(cfg.oracle.fleet);
            for (const FuelModel& m : fleet)
                out.push_back([m](const Eigen::VectorXd& x) { return fuel_consumption(m, x[0]); });
            return out;
        }
        case OracleType::functions: {
            for (const FunctionSpec& fs : cfg.oracle.functions) {
                if (fs.kind == FunctionSpec::Kind::constant) {
                    out.push_back([v = fs.value](const Eigen::VectorXd&) { return v; });
                } else {
                    out.push_back([fs](const Eigen::VectorXd& x) {
                        return fs.scale * (x - fs.center).squaredNorm();
                    });
                }
            }
            return out;
        }
        case OracleType::custom:
            throw std::invalid_argument(
                "build_oracles: custom configs take their local costs through the oracle "
                "callback");
    }
    throw std::invalid_argument("build_oracles: unknown oracle type");
}

bool oracle_models_known(const FullConfig& cfg) {
    return cfg.oracle.type != OracleType::custom;
}

std::optional<std::pair<double, double>> known_optimum(const FullConfig& cfg) {
    if (!oracle_models_known(cfg) || cfg.run.domain.dim() != 1) return std::nullopt;
    if (cfg.oracle.type == OracleType::platoon) {
        std::vector<FuelModel> fleet =
            cfg.oracle.has_vehicles ? cfg.oracle.vehicles : sample_fleet(cfg.oracle.fleet);
        return true_platoon_optimum(fleet, cfg.run.domain);
    }
    std::vector<Oracle> fns = build_oracles(cfg);
    ScalarField total = [&](const Eigen::VectorXd& x) {
        double s = 0.0;
        for (const auto& f : fns) s += f(x);
        return s;
    };
    BoxMinimum best = minimize_on_box(total, cfg.run.domain, 1000001);
    return std::make_pair(best.argmin[0], best.value);
}

}  // namespace mabo
